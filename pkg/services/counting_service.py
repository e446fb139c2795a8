"""
Counting Service

Brute-force tables over the enumerated trees, the engine registry, and the
cross-check harness comparing every engine against brute force.

Brute force is authoritative: a mismatch from the ECO, series or recursion
engine is reported with its location, never patched over.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from config import get_limits
from services.count_table import CountTable, Engine, Statistic
from services.eco_service import eco_lr_expand, eco_rl_expand, lr_rule
from services.permutation_service import cycle_up_down_cycle_count
from services.recursion_service import g_table
from services.series_service import (
    cycle_egf,
    euler_numbers,
    f2_series,
    table_lr_from_series,
)
from services.tree_service import check_tree_size, stats, walk_generating_tree
from utils.errors import PreconditionError

logger = logging.getLogger(__name__)

ENGINES_BY_STATISTIC = {
    Statistic.LR: (Engine.BRUTE, Engine.ECO, Engine.SERIES),
    Statistic.RL: (Engine.BRUTE, Engine.ECO, Engine.RECURSION, Engine.SERIES),
}

CYCLE_CHECK_LIMIT = 8


@dataclass(frozen=True)
class Discrepancy:
    statistic: str
    n: int
    stat: int
    reference: str
    candidate: str
    expected: int
    found: int

    def describe(self):
        return (f"{self.statistic} n={self.n} stat={self.stat}: "
                f"{self.reference}={self.expected} but {self.candidate}={self.found}")


@dataclass(frozen=True)
class Comparison:
    name: str
    discrepancy: Optional[Discrepancy] = None

    @property
    def agreed(self):
        return self.discrepancy is None


@dataclass
class CrossCheckReport:
    n_max: int
    comparisons: List[Comparison] = field(default_factory=list)

    @property
    def agreed(self):
        return all(c.agreed for c in self.comparisons)

    @property
    def first_discrepancy(self) -> Optional[Discrepancy]:
        for comparison in self.comparisons:
            if not comparison.agreed:
                return comparison.discrepancy
        return None


# ==================================================
# BRUTE FORCE
# ==================================================

def brute_tables(n_max) -> Dict[Statistic, CountTable]:
    """Both statistics from a single walk over all trees of size <= n_max."""
    check_tree_size(n_max)
    lr = CountTable(Statistic.LR, Engine.BRUTE, n_max)
    rl = CountTable(Statistic.RL, Engine.BRUTE, n_max)
    for tree in walk_generating_tree(n_max):
        s = stats(tree)
        lr.add(s.n, s.l)
        rl.add(s.n, s.r)
    logger.info(f"Brute force tabulated all trees up to size {n_max}")
    return {Statistic.LR: lr, Statistic.RL: rl}


def brute_table(statistic, n_max) -> CountTable:
    return brute_tables(n_max)[Statistic(statistic)]


def series_rl_table(n_max) -> CountTable:
    """Columns r=1 (Euler numbers) and r=2 (cycle EGF shifted by two) only."""
    if n_max < 1:
        raise PreconditionError(f"n_max must be at least 1, got {n_max}")
    table = CountTable(Statistic.RL, Engine.SERIES, n_max, columns=frozenset({1, 2}))
    for n, e in enumerate(euler_numbers(n_max), start=1):
        table.add(n, 1, e)
    cycles = cycle_egf(max(n_max - 2, 0))
    for n in range(3, n_max + 1):
        table.add(n, 2, int(cycles.scaled_coefficient(n - 2)))
    return table


# ==================================================
# ENGINE REGISTRY
# ==================================================

def build_table(statistic, engine, n_max, lr_production=lr_rule) -> CountTable:
    statistic, engine = Statistic(statistic), Engine(engine)
    if engine not in ENGINES_BY_STATISTIC[statistic]:
        raise PreconditionError(f"engine '{engine.value}' cannot count '{statistic.value}'")
    if engine is Engine.BRUTE:
        return brute_table(statistic, n_max)
    if statistic is Statistic.LR:
        if engine is Engine.ECO:
            return eco_lr_expand(n_max, lr_production)
        return table_lr_from_series(n_max)
    if engine is Engine.ECO:
        return eco_rl_expand(n_max)
    if engine is Engine.RECURSION:
        return g_table(n_max)
    return series_rl_table(n_max)


def compare_tables(reference: CountTable, candidate: CountTable) -> Optional[Discrepancy]:
    """First cell (n ascending, stat ascending) where the two defined values differ."""
    n_max = min(reference.n_max, candidate.n_max)
    for n in range(1, n_max + 1):
        for stat in range(1, n + 1):
            if not (reference.defines(stat) and candidate.defines(stat)):
                continue
            expected, found = reference.entry(n, stat), candidate.entry(n, stat)
            if expected != found:
                return Discrepancy(reference.statistic.value, n, stat,
                                   reference.engine.value, candidate.engine.value,
                                   expected, found)
    return None


def compare_engines(tables: List[CountTable]) -> List[Comparison]:
    """Compare every table with the first one (brute force when it is selected)."""
    reference = tables[0]
    return [Comparison(f"{reference.label()} vs {table.label()}", compare_tables(reference, table))
            for table in tables[1:]]


# ==================================================
# CROSS CHECK
# ==================================================

def _column_comparison(name, statistic, reference, values, source):
    for n, found in values:
        expected = reference.entry(n, 2)
        if expected != found:
            return Comparison(name, Discrepancy(statistic, n, 2, 'brute', source, expected, found))
    return Comparison(name)


def cross_check(n_max, lr_production=lr_rule) -> CrossCheckReport:
    """Compare brute force with every other engine and with the r=2 oracles."""
    report = CrossCheckReport(n_max)
    brute = brute_tables(n_max)

    for statistic, engines in ENGINES_BY_STATISTIC.items():
        for engine in engines[1:]:
            candidate = build_table(statistic, engine, n_max, lr_production)
            report.comparisons.append(Comparison(
                f"{brute[statistic].label()} vs {candidate.label()}",
                compare_tables(brute[statistic], candidate),
            ))

    rl = brute[Statistic.RL]
    if n_max >= 3:
        f2 = f2_series(n_max)
        report.comparisons.append(_column_comparison(
            'rl/brute column 2 vs f2', 'rl', rl,
            [(s, int(f2.scaled_coefficient(s))) for s in range(3, n_max + 1)], 'f2'))

    top = min(CYCLE_CHECK_LIMIT, n_max - 2, get_limits().cycle_bound)
    if top >= 1:
        report.comparisons.append(_column_comparison(
            'rl/brute column 2 vs cycle-up-down', 'rl', rl,
            [(n + 2, cycle_up_down_cycle_count(n)) for n in range(1, top + 1)], 'cycle-up-down'))

    if report.agreed:
        logger.info(f"Cross-check up to n={n_max}: {len(report.comparisons)} comparisons agree")
    else:
        logger.error(f"Cross-check discrepancy: {report.first_discrepancy.describe()}")
    return report


def level_sizes(n_max) -> List[int]:
    """|B_n| for n = 1..n_max from the Euler numbers (|B_n| = e_(n+1))."""
    return euler_numbers(n_max + 1)[1:]
