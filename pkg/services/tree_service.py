"""
Tree Service
Binary increasing trees: construction, the one-node-at-a-time growth
(Theta), statistics, min-path / max-path and canonical drawings.

Trees are un-ordered values (a parent map plus sorted child lists); a plane
drawing is derived on demand by :func:`canonical_drawing`.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional, Tuple

from config import get_limits
from utils.errors import InvalidTree, PreconditionError, SizeBoundExceeded

logger = logging.getLogger(__name__)


class Orientation(str, Enum):
    """How an only child is drawn."""
    STANDARD = 'standard'
    LEFT = 'left-oriented'


class TreeClass(str, Enum):
    """Outdegree of the last max-path node: 1 gives A, 0 gives B."""
    A = 'A'
    B = 'B'


def _children_from_parents(parents):
    size = len(parents) + 1
    children = [[] for _ in range(size)]
    # labels arrive in ascending order, so each list is already sorted
    for label, parent in enumerate(parents, start=2):
        children[parent - 1].append(label)
    return tuple(tuple(kids) for kids in children)


@dataclass(frozen=True)
class IncreasingTree:
    """A rooted un-ordered tree on 1..n, outdegree at most two, increasing labels.

    ``parents[k - 2]`` is the parent of label ``k``; the root 1 has none.
    Equality is equality of parent maps.
    """
    parents: Tuple[int, ...] = ()
    children: Tuple[Tuple[int, ...], ...] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.children is None:
            object.__setattr__(self, 'children', _children_from_parents(self.parents))

    @classmethod
    def single(cls):
        return cls((), ((),))

    @classmethod
    def from_parents(cls, parents):
        """Build a tree from the parents of labels 2..n, validating every invariant."""
        parents = tuple(int(p) for p in parents)
        for label, parent in enumerate(parents, start=2):
            if not 1 <= parent < label:
                raise InvalidTree(f"parent of {label} must lie in 1..{label - 1}, got {parent}")
        tree = cls(parents)
        for label, kids in enumerate(tree.children, start=1):
            if len(kids) > 2:
                raise InvalidTree(f"node {label} has outdegree {len(kids)}")
        return tree

    @property
    def size(self):
        return len(self.parents) + 1

    def parent(self, label) -> Optional[int]:
        return None if label == 1 else self.parents[label - 2]

    def children_of(self, label) -> Tuple[int, ...]:
        return self.children[label - 1]

    def outdegree(self, label):
        return len(self.children[label - 1])

    def labels(self):
        return range(1, self.size + 1)

    def attach(self, host):
        """Return the tree with node n+1 added as a child of ``host``."""
        if self.outdegree(host) >= 2:
            raise InvalidTree(f"node {host} already has two children")
        new_label = self.size + 1
        children = list(self.children)
        children[host - 1] = children[host - 1] + (new_label,)
        children.append(())
        return IncreasingTree(self.parents + (host,), tuple(children))


@dataclass(frozen=True)
class TreeStatistics:
    o: int
    p: int
    q: int
    n: int
    d: int
    l: int  # noqa: E741 (min-path length)
    r: int
    cls: TreeClass


@dataclass(frozen=True)
class OrderedDrawing:
    """A plane drawing: per label, the left and right slot (``None`` if empty)."""
    tree: IncreasingTree
    left: Tuple[Optional[int], ...]
    right: Tuple[Optional[int], ...]
    orientation: Orientation

    @property
    def size(self):
        return self.tree.size

    def left_child(self, label):
        return self.left[label - 1]

    def right_child(self, label):
        return self.right[label - 1]


# ==================================================
# GROWTH AND ENUMERATION
# ==================================================

def check_tree_size(n, what='tree size'):
    """Raise unless 1 <= n <= the configured bound."""
    if n < 1:
        raise PreconditionError(f"{what} must be at least 1, got {n}")
    bound = get_limits().max_tree_size
    if n > bound:
        logger.error(f"Refusing {what} {n}: bound is {bound} (ANDRE_MAX_TREE_SIZE)")
        raise SizeBoundExceeded(what, n, bound)


def theta_successors(t: IncreasingTree) -> List[IncreasingTree]:
    """Attach n+1 under every node of outdegree < 2, by ascending host label."""
    return [t.attach(host) for host in t.labels() if t.outdegree(host) < 2]


def _walk_level(t, n):
    if t.size == n:
        yield t
        return
    for child in theta_successors(t):
        yield from _walk_level(child, n)


def iter_trees(n) -> Iterator[IncreasingTree]:
    """Stream B_n in the deterministic enumeration order.

    The depth-first walk of the generating tree visits each level in the same
    order as expanding the previous level tree by tree, so this matches
    :func:`enumerate_trees` without holding a level in memory.
    """
    check_tree_size(n)
    return _walk_level(IncreasingTree.single(), n)


def walk_generating_tree(n_max) -> Iterator[IncreasingTree]:
    """Yield every tree of size 1..n_max (pre-order of the generating tree)."""
    check_tree_size(n_max)

    def walk(t):
        yield t
        if t.size < n_max:
            for child in theta_successors(t):
                yield from walk(child)

    return walk(IncreasingTree.single())


def enumerate_trees(n) -> List[IncreasingTree]:
    trees = list(iter_trees(n))
    logger.info(f"Enumerated {len(trees)} trees of size {n}")
    return trees


def random_tree(n, rng) -> IncreasingTree:
    """Grow a tree of size n from random attachment choices (not uniform on B_n)."""
    t = IncreasingTree.single()
    while t.size < n:
        hosts = [h for h in t.labels() if t.outdegree(h) < 2]
        t = t.attach(rng.choice(hosts))
    return t


# ==================================================
# STATISTICS AND PATHS
# ==================================================

def min_path(t: IncreasingTree) -> List[int]:
    """Root-to-leaf walk that always takes the least-labelled child."""
    node = 1
    path = [node]
    while t.children_of(node):
        node = t.children_of(node)[0]
        path.append(node)
    return path


def max_path(t: IncreasingTree) -> List[int]:
    """Walk to the largest child only while the current node has two children."""
    node = 1
    path = [node]
    while t.outdegree(node) == 2:
        node = t.children_of(node)[1]
        path.append(node)
    return path


def classify(t: IncreasingTree) -> TreeClass:
    last = max_path(t)[-1]
    return TreeClass.A if t.outdegree(last) == 1 else TreeClass.B


def is_strictly_binary(t: IncreasingTree) -> bool:
    return all(len(kids) != 1 for kids in t.children)


def stats(t: IncreasingTree) -> TreeStatistics:
    degrees = [len(kids) for kids in t.children]
    o = degrees.count(0)
    p = degrees.count(1)
    q = degrees.count(2)
    n = t.size
    path = max_path(t)
    cls = TreeClass.A if degrees[path[-1] - 1] == 1 else TreeClass.B
    return TreeStatistics(o=o, p=p, q=q, n=n, d=n - 2 * o + 1,
                          l=len(min_path(t)), r=len(path), cls=cls)


# ==================================================
# DRAWINGS
# ==================================================

def canonical_drawing(t: IncreasingTree, orientation=Orientation.STANDARD) -> OrderedDrawing:
    """The unique drawing obeying the orientation's slot rules.

    Two children: the smaller label goes left. An only child goes right in the
    standard drawing and left in the left-oriented one.
    """
    orientation = Orientation(orientation)
    left = []
    right = []
    for kids in t.children:
        if len(kids) == 2:
            left.append(kids[0])
            right.append(kids[1])
        elif len(kids) == 1:
            if orientation is Orientation.STANDARD:
                left.append(None)
                right.append(kids[0])
            else:
                left.append(kids[0])
                right.append(None)
        else:
            left.append(None)
            right.append(None)
    return OrderedDrawing(tree=t, left=tuple(left), right=tuple(right), orientation=orientation)
