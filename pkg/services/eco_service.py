"""
ECO Service
Level-by-level expansion of the succession rules produced by the Theta
construction:

    min-path:  (o,l,n) -> (o,l,n+1)^(o-1) (o,l+1,n+1) (o+1,l,n+1)^(n-2o+1)
    max-path:  labels (o,r,n) carrying a class A/B and d = n - 2o + 1

Multiplicities are aggregated per distinct label, so a level costs
polynomial rather than Euler-number work.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from services.count_table import CountTable, Engine, Statistic
from services.tree_service import TreeClass, check_tree_size
from utils.errors import SuccessionRuleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class LrLabel:
    o: int
    l: int  # noqa: E741
    n: int

    def check(self):
        if self.o < 1 or self.n - 2 * self.o + 1 < 0 or not 1 <= self.l <= self.n:
            raise SuccessionRuleError(f"label {self} breaks 1 <= o, n - 2o + 1 >= 0, l <= n")
        if self.n >= 2 and self.l < 2:
            raise SuccessionRuleError(f"label {self} has a min-path shorter than 2")


@dataclass(frozen=True, order=True)
class RlLabel:
    o: int
    r: int
    n: int
    cls: TreeClass
    d: int

    def check(self):
        if self.d != self.n - 2 * self.o + 1 or self.d < 0:
            raise SuccessionRuleError(f"label {self} has d != n - 2o + 1 or d < 0")
        if self.cls is TreeClass.A and self.d < 1:
            raise SuccessionRuleError(f"class-A label {self} has d = 0")


Production = List[Tuple[int, object]]
Rule = Callable[[object], Production]


@dataclass
class LevelState:
    n: int
    counts: Dict[object, int] = field(default_factory=dict)

    @property
    def total(self):
        return sum(self.counts.values())


# ==================================================
# RULES
# ==================================================

def lr_rule(label: LrLabel) -> Production:
    o, l, n = label.o, label.l, label.n
    return [
        (o - 1, LrLabel(o, l, n + 1)),
        (1, LrLabel(o, l + 1, n + 1)),
        (n - 2 * o + 1, LrLabel(o + 1, l, n + 1)),
    ]


def perturbed_lr_rule(label: LrLabel) -> Production:
    """lr_rule with the min-path extension counted twice; exercises discrepancy reporting."""
    same, extend, split = lr_rule(label)
    return [same, (extend[0] + 1, extend[1]), split]


def rl_rule(label: RlLabel) -> Production:
    """The max-path rules.

    Every label fires its class's d >= 0 production; class-A labels (always
    d > 0) also fire the production that grows the outdegree-1 nodes. For
    class B with d = 0 the d-fold factor is empty.
    """
    o, r, n, d = label.o, label.r, label.n, label.d
    A, B = TreeClass.A, TreeClass.B
    if label.cls is A:
        production = [(o, RlLabel(o, r, n + 1, A, d + 1))]
        if d > 0:
            production += [
                (1, RlLabel(o + 1, r + 1, n + 1, B, d - 1)),
                (d - 1, RlLabel(o + 1, r, n + 1, A, d - 1)),
            ]
        return production
    return [
        (o - 1, RlLabel(o, r, n + 1, B, d + 1)),
        (1, RlLabel(o, r, n + 1, A, d + 1)),
        (d, RlLabel(o + 1, r, n + 1, B, d - 1)),
    ]


# ==================================================
# LEVEL EXPANSION
# ==================================================

def expand_level(state: LevelState, rule: Rule) -> LevelState:
    counts = defaultdict(int)
    for label, multiplicity in state.counts.items():
        for exponent, child in rule(label):
            if exponent < 0:
                logger.error(f"Negative exponent {exponent} producing {child} from {label}")
                raise SuccessionRuleError(f"{label} produces {child} with exponent {exponent}")
            if exponent == 0:
                continue
            child.check()
            counts[child] += multiplicity * exponent
    return LevelState(state.n + 1, {label: counts[label] for label in sorted(counts)})


def eco_levels(root, rule: Rule, n_max) -> List[LevelState]:
    """Levels 1..n_max of the generating tree, starting from ``root``."""
    check_tree_size(n_max)
    levels = [LevelState(1, {root: 1})]
    while levels[-1].n < n_max:
        levels.append(expand_level(levels[-1], rule))
        logger.debug(f"Level {levels[-1].n}: {len(levels[-1].counts)} labels, "
                     f"{levels[-1].total} objects")
    return levels


def _table_from_levels(levels, statistic, stat_of):
    table = CountTable(statistic, Engine.ECO, levels[-1].n)
    for level in levels:
        for label, multiplicity in level.counts.items():
            table.add(level.n, stat_of(label), multiplicity)
    return table


def eco_lr_expand(n_max, rule: Rule = lr_rule) -> CountTable:
    levels = eco_levels(LrLabel(1, 1, 1), rule, n_max)
    logger.info(f"ECO min-path rule expanded to level {n_max}")
    return _table_from_levels(levels, Statistic.LR, lambda label: label.l)


def eco_rl_expand(n_max, rule: Rule = rl_rule) -> CountTable:
    levels = eco_levels(RlLabel(1, 1, 1, TreeClass.B, 0), rule, n_max)
    logger.info(f"ECO max-path rules expanded to level {n_max}")
    return _table_from_levels(levels, Statistic.RL, lambda label: label.r)
