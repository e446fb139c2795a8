"""
Permutation Service
The map phi from drawn trees to permutations and its inverse, restrictions,
minima statistics, membership in A_n / strict A_n / res_n, the extension
witness, and the brute-force cycle-up-down oracle.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from config import get_limits
from services.tree_service import (
    IncreasingTree,
    Orientation,
    canonical_drawing,
    check_tree_size,
    is_strictly_binary,
    iter_trees,
)
from utils.errors import (
    InvalidPermutation,
    OrientationViolation,
    PreconditionError,
    SizeBoundExceeded,
)
from utils.permutation_parser import PermutationParser

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Permutation:
    """A bijection on 1..n in one-line notation."""
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, 'entries', entries)
        if not entries:
            raise InvalidPermutation("a permutation needs at least one entry")
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise InvalidPermutation(f"{entries} is not a permutation of 1..{len(entries)}")

    @classmethod
    def of(cls, *entries):
        return cls(tuple(entries))

    @classmethod
    def parse(cls, text):
        return cls(PermutationParser.parse_line(text))

    @property
    def size(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return ' '.join(str(v) for v in self.entries)


# ==================================================
# PHI AND ITS INVERSE
# ==================================================

def phi(drawing) -> Permutation:
    """Read the drawing in symmetric order: left subtree, node, right subtree."""
    entries = []
    stack = []
    node = 1
    while stack or node is not None:
        while node is not None:
            stack.append(node)
            node = drawing.left_child(node)
        node = stack.pop()
        entries.append(node)
        node = drawing.right_child(node)
    return Permutation(tuple(entries))


def collapse_phi(drawing) -> Permutation:
    """phi as literally described: leaves repeatedly collapse into their parents.

    Each round, every current leaf merges into its parent, its word going to
    the parent's left or right according to the slot it occupied.
    """
    tree = drawing.tree
    words = {label: (label,) for label in tree.labels()}
    left = list(drawing.left)
    right = list(drawing.right)
    while len(words) > 1:
        leaves = [v for v in words if v != 1 and left[v - 1] is None and right[v - 1] is None]
        for leaf in leaves:
            host = tree.parent(leaf)
            if left[host - 1] == leaf:
                words[host] = words[leaf] + words[host]
                left[host - 1] = None
            else:
                words[host] = words[host] + words[leaf]
                right[host - 1] = None
            del words[leaf]
    return Permutation(words[1])


def phi_inverse(pi: Permutation, orientation=Orientation.LEFT) -> IncreasingTree:
    """Rebuild the tree whose drawing in ``orientation`` reads as ``pi``.

    The minimum of each factor is the subtree root; the entries on its left
    and right form the left and right subtrees.

    Raises:
        OrientationViolation: some factor cannot come from such a drawing.
    """
    orientation = Orientation(orientation)
    parents = [0] * (pi.size + 1)
    pending = [(pi.entries, None)]
    while pending:
        factor, parent = pending.pop()
        pos = min(range(len(factor)), key=factor.__getitem__)
        root = factor[pos]
        left, right = factor[:pos], factor[pos + 1:]

        if orientation is Orientation.LEFT and not left and right:
            raise OrientationViolation(factor, orientation.value, "only child on the right")
        if orientation is Orientation.STANDARD and left and not right:
            raise OrientationViolation(factor, orientation.value, "only child on the left")
        if left and right and min(left) > min(right):
            raise OrientationViolation(factor, orientation.value, "larger child on the left")

        if parent is not None:
            parents[root] = parent
        if right:
            pending.append((right, root))
        if left:
            pending.append((left, root))
    return IncreasingTree.from_parents(parents[2:])


# ==================================================
# RESTRICTIONS AND MINIMA
# ==================================================

def restriction(pi: Permutation, k) -> Permutation:
    if not 1 <= k <= pi.size:
        raise InvalidPermutation(f"restriction index {k} outside 1..{pi.size}")
    return Permutation(tuple(v for v in pi.entries if v <= k))


def lr_minima(pi: Permutation) -> FrozenSet[int]:
    found = []
    current = None
    for value in pi.entries:
        if current is None or value < current:
            current = value
            found.append(value)
    return frozenset(found)


def rl_minima(pi: Permutation) -> FrozenSet[int]:
    found = []
    current = None
    for value in reversed(pi.entries):
        if current is None or value < current:
            current = value
            found.append(value)
    return frozenset(found)


# ==================================================
# MEMBERSHIP AND SETS
# ==================================================

def in_res(pi: Permutation) -> bool:
    """True iff pi is a restriction of some strictly binary Andre permutation."""
    try:
        phi_inverse(pi, Orientation.LEFT)
    except OrientationViolation:
        return False
    return True


def is_andre(pi: Permutation) -> bool:
    try:
        phi_inverse(pi, Orientation.STANDARD)
    except OrientationViolation:
        return False
    return True


def in_strict_andre(pi: Permutation) -> bool:
    """True iff pi is phi of a strictly binary tree (no size bound involved)."""
    try:
        tree = phi_inverse(pi, Orientation.STANDARD)
    except OrientationViolation:
        return False
    return is_strictly_binary(tree)


def res_set(n) -> List[Permutation]:
    check_tree_size(n)
    images = (phi(canonical_drawing(t, Orientation.LEFT)) for t in iter_trees(n))
    result = list(dict.fromkeys(images))
    logger.info(f"res_{n} has {len(result)} permutations")
    return result


def andre_set(n) -> List[Permutation]:
    check_tree_size(n)
    return [phi(canonical_drawing(t, Orientation.STANDARD)) for t in iter_trees(n)]


def strict_andre_set(n) -> List[Permutation]:
    check_tree_size(n)
    return [phi(canonical_drawing(t, Orientation.STANDARD))
            for t in iter_trees(n) if is_strictly_binary(t)]


def extension_witness(pi: Permutation) -> Permutation:
    """A strictly binary Andre permutation that restricts to ``pi``.

    Every outdegree-1 node of the left-oriented tree of ``pi`` receives a
    fresh child; labels n+1, n+2, ... go to the hosts by ascending label.
    """
    try:
        tree = phi_inverse(pi, Orientation.LEFT)
    except OrientationViolation as e:
        raise PreconditionError(f"({pi}) is not in res_{pi.size}: {e}") from e
    hosts = [label for label in tree.labels() if tree.outdegree(label) == 1]
    for host in hosts:
        tree = tree.attach(host)
    # strictly binary, so both orientations draw it the same way
    return phi(canonical_drawing(tree, Orientation.STANDARD))


# ==================================================
# CYCLE-UP-DOWN ORACLE
# ==================================================

def cycle_up_down_cycles(images: Tuple[int, ...]) -> Optional[int]:
    """Number of cycles if every cycle, read from its minimum, goes up-down-up...

    ``images[i - 1]`` is the image of ``i``. Returns ``None`` otherwise.
    """
    n = len(images)
    seen = [False] * (n + 1)
    cycles = 0
    for start in range(1, n + 1):
        if seen[start]:
            continue
        # scanning upwards, start is the smallest element of its cycle
        cycle = []
        node = start
        while not seen[node]:
            seen[node] = True
            cycle.append(node)
            node = images[node - 1]
        for i in range(len(cycle) - 1):
            rising = cycle[i] < cycle[i + 1]
            if rising != (i % 2 == 0):
                return None
        cycles += 1
    return cycles


def cycle_up_down_cycle_count(n) -> int:
    """Total number of cycles over all cycle-up-down permutations of size n."""
    if n < 1:
        raise PreconditionError(f"size must be at least 1, got {n}")
    bound = get_limits().cycle_bound
    if n > bound:
        raise SizeBoundExceeded('cycle-up-down size', n, bound)
    total = 0
    for images in itertools.permutations(range(1, n + 1)):
        cycles = cycle_up_down_cycles(images)
        if cycles is not None:
            total += cycles
    logger.info(f"Cycle-up-down permutations of size {n} have {total} cycles in total")
    return total
