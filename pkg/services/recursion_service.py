"""
Recursion Service

The G_A / G_B polynomial recursion counting trees by leaves (x), max-path
length (w) and outdegree-1 nodes (v), split by class A / B:

    G_A' = (-xz/v)(G_A - G_A|v=0) + xz dG_A/dv + xvz dG_A/dx + vz G_B
    G_B' = (xwz/v)(G_A - G_A|v=0) + xz dG_B/dv + xvz dG_B/dx - vz G_B

starting from G_A = 0, G_B = xwz. Every term of a step-n polynomial has
z-degree n, so z is carried as the step index instead of an exponent.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from sympy import ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, ring

from services.count_table import CountTable, Engine, Statistic
from services.tree_service import TreeClass, check_tree_size, iter_trees, stats
from utils.errors import RecursionIntegrityError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int, int]  # degrees of x, w, v

STAT_RING, X, W, V = ring('x,w,v', ZZ)


@dataclass(frozen=True)
class StatPolynomial:
    """A polynomial of STAT_RING tagged with its step (the z-degree).

    ``poly`` also accepts a plain ``{(x, w, v): coefficient}`` mapping.
    """
    step: int
    poly: PolyElement = field(default_factory=lambda: STAT_RING.zero)

    def __post_init__(self):
        if not isinstance(self.poly, PolyElement):
            object.__setattr__(self, 'poly', STAT_RING(dict(self.poly)))

    @classmethod
    def zero(cls, step):
        return cls(step, STAT_RING.zero)

    @property
    def terms(self) -> Dict[Monomial, int]:
        return {mono: int(c) for mono, c in self.poly.terms()}

    def is_zero(self):
        return not self.poly

    def coefficient(self, x, w, v):
        return int(self.poly.get((x, w, v), 0))

    def _combine(self, other, sign):
        if self.step != other.step:
            raise RecursionIntegrityError(f"adding step {self.step} to step {other.step}")
        return StatPolynomial(self.step, self.poly + sign * other.poly)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def times(self, dx=0, dw=0, dv=0, dz=0, coeff=1):
        """Multiply by coeff * x^dx w^dw v^dv z^dz."""
        return StatPolynomial(self.step + dz, self.poly * coeff * X**dx * W**dw * V**dv)

    def partial_x(self):
        return StatPolynomial(self.step, self.poly.diff(X))

    def partial_v(self):
        return StatPolynomial(self.step, self.poly.diff(V))

    def at_v_zero(self):
        return StatPolynomial(self.step, self.poly.subs(V, 0))

    def divide_by_v(self):
        try:
            quotient = self.poly.exquo(V)
        except ExactQuotientFailed:
            raise RecursionIntegrityError(f"step {self.step} polynomial is not divisible by v")
        return StatPolynomial(self.step, quotient)

    def w_marginal(self) -> Dict[int, int]:
        totals: Dict[int, int] = {}
        for (_, w, _), c in self.poly.terms():
            totals[w] = totals.get(w, 0) + int(c)
        return totals

    def check_nonnegative(self, name):
        negative = {m: c for m, c in self.terms.items() if c < 0}
        if negative:
            logger.error(f"{name} at step {self.step} has negative coefficients: {negative}")
            raise RecursionIntegrityError(f"{name} at step {self.step} has negative coefficients")


def initial_polynomials() -> Tuple[StatPolynomial, StatPolynomial]:
    return StatPolynomial.zero(1), StatPolynomial(1, {(1, 1, 0): 1})


def g_step(ga: StatPolynomial, gb: StatPolynomial) -> Tuple[StatPolynomial, StatPolynomial]:
    if ga.step != gb.step:
        raise RecursionIntegrityError(f"G_A at step {ga.step} but G_B at step {gb.step}")
    shifted = (ga - ga.at_v_zero()).divide_by_v()

    next_a = (shifted.times(dx=1, dz=1, coeff=-1)
              + ga.partial_v().times(dx=1, dz=1)
              + ga.partial_x().times(dx=1, dv=1, dz=1)
              + gb.times(dv=1, dz=1))
    next_b = (shifted.times(dx=1, dw=1, dz=1)
              + gb.partial_v().times(dx=1, dz=1)
              + gb.partial_x().times(dx=1, dv=1, dz=1)
              - gb.times(dv=1, dz=1))

    next_a.check_nonnegative('G_A')
    next_b.check_nonnegative('G_B')
    return next_a, next_b


def g_sequence(n_max) -> List[Tuple[StatPolynomial, StatPolynomial]]:
    """[(G_A^(n), G_B^(n)) for n = 1..n_max]."""
    check_tree_size(n_max)
    sequence = [initial_polynomials()]
    while len(sequence) < n_max:
        sequence.append(g_step(*sequence[-1]))
    return sequence


def g_table(n_max) -> CountTable:
    table = CountTable(Statistic.RL, Engine.RECURSION, n_max)
    for ga, gb in g_sequence(n_max):
        for w, count in (ga + gb).w_marginal().items():
            table.add(ga.step, w, count)
    logger.info(f"G_A/G_B recursion reached step {n_max}")
    return table


def brute_stat_polynomials(n) -> Tuple[StatPolynomial, StatPolynomial]:
    """G_A^(n) and G_B^(n) summed directly over B_n."""
    parts = {TreeClass.A: {}, TreeClass.B: {}}
    for tree in iter_trees(n):
        s = stats(tree)
        terms = parts[s.cls]
        key = (s.o, s.r, s.d)
        terms[key] = terms.get(key, 0) + 1
    return StatPolynomial(n, parts[TreeClass.A]), StatPolynomial(n, parts[TreeClass.B])
