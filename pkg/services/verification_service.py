"""
Verification Service

The property suite behind ``verify``: every invariant the services promise,
each run over the sizes it can afford and reported as pass/fail with a
located detail message.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, List, Tuple

from config import get_limits
from services.count_table import Statistic
from services.counting_service import brute_tables, cross_check, level_sizes
from services.eco_service import (
    LrLabel,
    RlLabel,
    eco_levels,
    lr_rule,
    perturbed_lr_rule,
    rl_rule,
)
from services.permutation_service import (
    Permutation,
    andre_set,
    collapse_phi,
    extension_witness,
    in_res,
    in_strict_andre,
    lr_minima,
    phi,
    phi_inverse,
    res_set,
    restriction,
    rl_minima,
    strict_andre_set,
)
from services.recursion_service import brute_stat_polynomials, g_sequence
from services.series_service import (
    TrivariateTruncation,
    TruncatedSeries,
    cycle_egf,
    euler_egf,
    euler_numbers,
    euler_power_identity,
    f2_identity_check,
    ftilde,
    pde_residual,
    sec_series,
    sin_series,
    tan_series,
)
from services.tree_service import (
    Orientation,
    TreeClass,
    canonical_drawing,
    iter_trees,
    max_path,
    min_path,
    stats,
    theta_successors,
)

logger = logging.getLogger(__name__)

RES_5_LISTING = [
    (3, 2, 5, 1, 4), (4, 2, 5, 1, 3), (2, 1, 4, 3, 5), (3, 2, 4, 1, 5),
    (5, 3, 2, 4, 1), (3, 2, 5, 4, 1), (4, 3, 2, 5, 1), (3, 2, 1, 5, 4),
    (4, 2, 1, 5, 3), (5, 2, 1, 4, 3), (4, 3, 2, 1, 5), (5, 3, 2, 1, 4),
    (5, 4, 2, 1, 3), (2, 1, 5, 4, 3), (4, 3, 5, 2, 1), (5, 4, 3, 2, 1),
]
NON_ANDRE_RESTRICTION = (3, 2, 6, 5, 1, 4)

TREE_PROPERTY_LIMIT = 9
MEMBERSHIP_LIMIT = 8
WITNESS_LIMIT = 7
PDE_LIMIT = 8
EULER_POWER_LIMIT = 5


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str


Check = Callable[[int], Tuple[bool, str]]


def _sizes(n_max, limit):
    return range(1, min(n_max, limit) + 1)


# ==================================================
# TREES
# ==================================================

def check_level_sizes(n_max):
    expected = level_sizes(n_max)
    for n, size in zip(range(1, n_max + 1), expected):
        found = sum(1 for _ in iter_trees(n))
        if found != size:
            return False, f"|B_{n}| = {found}, expected {size}"
    return True, f"|B_n| matches the Euler numbers for n <= {n_max}"


def check_tree_statistics(n_max):
    checked = 0
    for n in _sizes(n_max, 10):
        for tree in iter_trees(n):
            s = stats(tree)
            ok = (s.o == s.q + 1 and s.o + s.p + s.q == n and s.d == s.p
                  and 1 <= s.l <= n and 1 <= s.r <= n
                  and (s.cls is TreeClass.B or s.d >= 1))
            if not ok:
                return False, f"tree {tree.parents} has inconsistent statistics {s}"
            checked += 1
    return True, f"{checked} trees satisfy o = q + 1, o + p + q = n, d = p"


def check_paths_increasing(n_max):
    for n in _sizes(n_max, 10):
        for tree in iter_trees(n):
            for path in (min_path(tree), max_path(tree)):
                if any(a >= b for a, b in zip(path, path[1:])):
                    return False, f"path {path} of {tree.parents} is not increasing"
    return True, "min-paths and max-paths are increasing"


def check_generating_tree(n_max):
    for n in range(1, min(n_max, TREE_PROPERTY_LIMIT)):
        produced = Counter()
        for tree in iter_trees(n):
            successors = theta_successors(tree)
            if len(set(successors)) != len(successors):
                return False, f"duplicate successors of {tree.parents}"
            produced.update(successors)
        if set(produced) != set(iter_trees(n + 1)) or any(c != 1 for c in produced.values()):
            return False, f"successors of B_{n} do not cover B_{n + 1} exactly once"
    return True, "every tree is produced exactly once by Theta"


# ==================================================
# PERMUTATIONS
# ==================================================

def check_phi_collapse(n_max):
    for n in _sizes(n_max, TREE_PROPERTY_LIMIT):
        for tree in iter_trees(n):
            for orientation in Orientation:
                drawing = canonical_drawing(tree, orientation)
                if phi(drawing) != collapse_phi(drawing):
                    return False, f"collapse and symmetric order differ on {tree.parents}"
    return True, "collapse procedure equals symmetric-order reading"


def check_phi_round_trip(n_max):
    for n in _sizes(n_max, TREE_PROPERTY_LIMIT):
        for tree in iter_trees(n):
            for orientation in Orientation:
                if phi_inverse(phi(canonical_drawing(tree, orientation)), orientation) != tree:
                    return False, f"round trip fails on {tree.parents} ({orientation.value})"
    return True, "phi_inverse inverts phi in both orientations"


def check_minima_paths(n_max):
    for n in _sizes(n_max, TREE_PROPERTY_LIMIT):
        for tree in iter_trees(n):
            pi = phi(canonical_drawing(tree, Orientation.LEFT))
            if lr_minima(pi) != frozenset(min_path(tree)):
                return False, f"left-to-right minima of ({pi}) differ from the min-path"
            if rl_minima(pi) != frozenset(max_path(tree)):
                return False, f"right-to-left minima of ({pi}) differ from the max-path"
    return True, "minima sets equal the min-path and max-path labels"


def check_membership(n_max):
    for n in _sizes(n_max, MEMBERSHIP_LIMIT):
        members = set(res_set(n))
        tested = {Permutation(p) for p in itertools.permutations(range(1, n + 1))
                  if in_res(Permutation(p))}
        if members != tested:
            return False, f"membership test and res_{n} disagree on {len(members ^ tested)} permutations"
    return True, "in_res agrees with res_n"


def check_witnesses(n_max):
    small_strict = {}
    for n in _sizes(n_max, WITNESS_LIMIT):
        for pi in res_set(n):
            sigma = extension_witness(pi)
            if not in_strict_andre(sigma) or restriction(sigma, n) != pi:
                return False, f"witness ({sigma}) for ({pi}) is unsound"
            m = sigma.size
            if m <= TREE_PROPERTY_LIMIT:
                if m not in small_strict:
                    small_strict[m] = set(strict_andre_set(m))
                if sigma not in small_strict[m]:
                    return False, f"witness ({sigma}) missing from strict A_{m}"
    return True, "extension witnesses are strictly binary and restrict correctly"


def check_res_listing(n_max):
    if n_max < 5:
        return True, "sizes below 5"
    expected = {Permutation(p) for p in RES_5_LISTING}
    found = set(res_set(5))
    if found != expected:
        return False, f"res_5 differs from the listing in {len(found ^ expected)} permutations"
    if n_max < 6:
        return True, "res_5 matches the listing"
    pi = Permutation(NON_ANDRE_RESTRICTION)
    if not in_res(pi) or pi in set(andre_set(6)):
        return False, f"({pi}) should be in res_6 but not in A_6"
    return True, "res_5 matches the listing; res_6 is not contained in A_6"


# ==================================================
# SERIES
# ==================================================

def _series_order(wanted):
    return min(wanted, get_limits().series_order)


def check_series_identities(n_max):
    order = _series_order(12)
    sin, sec, tan = sin_series(order), sec_series(order), tan_series(order)
    if sin * sec != tan:
        return False, "sin * sec != tan"
    if sec * sec - tan * tan != TruncatedSeries.constant(1, order):
        return False, "sec^2 - tan^2 != 1"
    egf = euler_egf(order)
    if egf.integral().derivative() != egf:
        return False, "d/dz of the integral is not the identity"
    return True, f"ring identities hold through order {order}"


def check_euler_power(n_max):
    order = _series_order(n_max + 1)
    for m in range(1, min(EULER_POWER_LIMIT, n_max) + 1):
        if not euler_power_identity(m, order):
            return False, f"power identity fails for m={m} at order {order}"
    return True, f"power identity holds for m <= {min(EULER_POWER_LIMIT, n_max)} at order {order}"


def check_cycle_egf(n_max):
    order = _series_order(n_max + 2)
    F = ftilde(order)
    if cycle_egf(order) != F.y_derivative_at(1):
        return False, f"cycle EGF differs from dFtilde/dy at y=1 (order {order})"
    at_one = F.specialize(1)
    if at_one.derivative() != at_one.truncate(order - 1) * euler_egf(order - 1):
        return False, "Ftilde(1, z)' != Ftilde(1, z) (sec + tan)"
    return True, f"cycle EGF equals dFtilde/dy at y=1 through order {order}"


def check_f2_chain(n_max):
    order = _series_order(max(n_max + 2, 3))
    if not f2_identity_check(order):
        return False, f"f2 identity chain breaks at order {order}"
    return True, f"f2 identity chain holds through order {order - 2}"


def check_pde(n_max):
    order = min(n_max, PDE_LIMIT)
    residual = pde_residual(TrivariateTruncation.from_trees(order))
    if residual:
        return False, f"PDE residual {residual} at order {order}"
    return True, f"PDE residual vanishes through order {order}"


# ==================================================
# COUNTING ENGINES
# ==================================================

def make_engine_check(lr_production):
    def check_engines(n_max):
        report = cross_check(n_max, lr_production)
        if not report.agreed:
            return False, report.first_discrepancy.describe()
        return True, f"{len(report.comparisons)} engine comparisons agree up to n={n_max}"
    return check_engines


def make_level_total_check(lr_production):
    def check_level_totals(n_max):
        sizes = level_sizes(n_max)
        for root, rule in ((LrLabel(1, 1, 1), lr_production),
                           (RlLabel(1, 1, 1, TreeClass.B, 0), rl_rule)):
            for level, size in zip(eco_levels(root, rule, n_max), sizes):
                if level.total != size:
                    return False, f"{type(root).__name__} level {level.n} totals {level.total}, expected {size}"
                if any(isinstance(lab, RlLabel) and lab.cls is TreeClass.A and lab.d == 0
                       for lab in level.counts):
                    return False, f"class-A label with d = 0 at level {level.n}"
        return True, f"level totals equal |B_n| for both rules up to n={n_max}"
    return check_level_totals


def check_first_columns(n_max):
    euler = euler_numbers(n_max)
    tables = brute_tables(n_max)
    for n in range(1, n_max + 1):
        if tables[Statistic.RL].entry(n, 1) != euler[n - 1]:
            return False, f"rl column 1 at n={n} is not e_{n}"
        if n >= 2 and tables[Statistic.LR].entry(n, 2) != euler[n - 2]:
            return False, f"lr column 2 at n={n} is not e_{n - 1}"
    return True, "rl column 1 and lr column 2 are Euler numbers"


def check_g_recursion(n_max):
    for n, (ga, gb) in enumerate(g_sequence(min(n_max, 10)), start=1):
        if (ga, gb) != brute_stat_polynomials(n):
            return False, f"G_A/G_B at step {n} differ from the brute-force polynomials"
    return True, "G_A/G_B recursion matches the brute-force polynomials"


# ==================================================
# SUITE
# ==================================================

def property_checks(inject_fault=False) -> List[Tuple[str, Check]]:
    lr_production = perturbed_lr_rule if inject_fault else lr_rule
    return [
        ('tree_level_sizes', check_level_sizes),
        ('tree_statistics', check_tree_statistics),
        ('paths_increasing', check_paths_increasing),
        ('generating_tree_exact_cover', check_generating_tree),
        ('phi_collapse_agreement', check_phi_collapse),
        ('phi_round_trip', check_phi_round_trip),
        ('minima_equal_paths', check_minima_paths),
        ('res_membership', check_membership),
        ('extension_witness', check_witnesses),
        ('res_listing_and_non_inclusion', check_res_listing),
        ('series_identities', check_series_identities),
        ('euler_power_identity', check_euler_power),
        ('cycle_egf', check_cycle_egf),
        ('f2_chain', check_f2_chain),
        ('pde_residual', check_pde),
        ('eco_level_totals', make_level_total_check(lr_production)),
        ('first_columns_euler', check_first_columns),
        ('g_recursion', check_g_recursion),
        ('engines_agree', make_engine_check(lr_production)),
    ]


def run_property_suite(n_max=10, inject_fault=False) -> List[PropertyResult]:
    results = []
    for name, check in property_checks(inject_fault):
        try:
            passed, detail = check(n_max)
        except Exception as e:
            logger.error(f"Property {name} raised: {e}")
            passed, detail = False, f"{type(e).__name__}: {e}"
        if passed:
            logger.info(f"Property {name} passed")
        else:
            logger.error(f"Property {name} failed: {detail}")
        results.append(PropertyResult(name, passed, detail))
    return results
