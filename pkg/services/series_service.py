"""
Series Service

Exact truncated power series with rational coefficients, and every
generating function the enumeration uses:
- sin, cos, sec, tan and the Euler EGF sec + tan
- L = -ln(1 - sin z) and Ftilde = exp(y L) = (1 / (1 - sin z))^y
- the cycle EGF L / (1 - sin z) and the max-path-two series f2
- the first-order PDE satisfied by the brute-force trivariate F(x, y, z)

No floating point anywhere: univariate coefficients are Fractions over
Python ints, and the trivariate PDE works in a sympy ring over QQ.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from sympy import QQ
from sympy.polys.rings import ring

from config import get_limits
from services.count_table import CountTable, Engine, Statistic
from services.tree_service import stats, walk_generating_tree
from utils.errors import PreconditionError, SizeBoundExceeded

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def check_series_order(order, what='series order'):
    if order < 0:
        raise PreconditionError(f"{what} must be nonnegative, got {order}")
    bound = get_limits().series_order
    if order > bound:
        logger.error(f"Refusing {what} {order}: bound is {bound} (ANDRE_SERIES_ORDER)")
        raise SizeBoundExceeded(what, order, bound)


# ==================================================
# UNIVARIATE SERIES
# ==================================================

@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 z + ... + c_N z^N, exact through order N.

    Binary operations on series of different orders keep the smaller order.
    """
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if not coeffs:
            raise PreconditionError("a series needs at least its constant term")
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def constant(cls, value, order):
        return cls((Fraction(value),) + (ZERO,) * order)

    @classmethod
    def monomial(cls, k, order, value=1):
        coeffs = [ZERO] * (order + 1)
        if k <= order:
            coeffs[k] = Fraction(value)
        return cls(tuple(coeffs))

    @property
    def order(self):
        return len(self.coeffs) - 1

    def coefficient(self, k):
        if k > self.order:
            raise PreconditionError(f"coefficient {k} is beyond truncation order {self.order}")
        return self.coeffs[k] if k >= 0 else ZERO

    def scaled_coefficient(self, k):
        """k! * c_k, the count an exponential generating function encodes."""
        return self.coefficient(k) * math.factorial(k)

    def truncate(self, order):
        if order > self.order:
            raise PreconditionError(f"cannot extend a series known to order {self.order}")
        return TruncatedSeries(self.coeffs[:order + 1])

    def agrees_with(self, other, through=None):
        through = min(self.order, other.order) if through is None else through
        return self.coeffs[:through + 1] == other.coeffs[:through + 1]

    # --- ring operations ---

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._lift(other)
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            factor = Fraction(other)
            return TruncatedSeries(tuple(c * factor for c in self.coeffs))
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        return self * (ONE / Fraction(other))

    def __pow__(self, exponent):
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = TruncatedSeries.constant(1, self.order)
        for _ in range(exponent):
            result = result * self
        return result

    # --- calculus ---

    def derivative(self):
        """d/dz; the result is exact through order N - 1."""
        if self.order == 0:
            raise PreconditionError("the derivative of an order-0 truncation is unknown")
        return TruncatedSeries(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)))

    def integral(self):
        """Antiderivative with zero constant term, exact through order N + 1."""
        return TruncatedSeries((ZERO,) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs)))

    def compose(self, inner):
        """self(inner(z)); ``inner`` must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise PreconditionError("composition needs an inner series with zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = TruncatedSeries.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * inner + self.coeffs[k]
        return result

    def reciprocal(self):
        c0 = self.coeffs[0]
        if c0 == 0:
            raise PreconditionError("series with zero constant term has no reciprocal")
        out = [ONE / c0]
        for k in range(1, self.order + 1):
            acc = sum((self.coeffs[j] * out[k - j] for j in range(1, k + 1)), ZERO)
            out.append(-acc / c0)
        return TruncatedSeries(tuple(out))

    def log(self):
        """ln of a series with constant term 1, as the integral of f'/f."""
        if self.coeffs[0] != 1:
            raise PreconditionError("log needs constant term 1")
        if self.order == 0:
            return TruncatedSeries((ZERO,))
        return (self.derivative() * self.reciprocal()).integral()

    def exp(self):
        """exp of a series with zero constant term (k g_k = sum j f_j g_{k-j})."""
        if self.coeffs[0] != 0:
            raise PreconditionError("exp needs zero constant term")
        out = [ONE]
        for k in range(1, self.order + 1):
            acc = sum((j * self.coeffs[j] * out[k - j] for j in range(1, k + 1)), ZERO)
            out.append(acc / k)
        return TruncatedSeries(tuple(out))


def z_series(order, scale=1):
    """The series scale * z."""
    return TruncatedSeries.monomial(1, order, scale)


def sin_series(order):
    coeffs = [ZERO] * (order + 1)
    for k in range(1, order + 1, 2):
        coeffs[k] = Fraction((-1) ** (k // 2), math.factorial(k))
    return TruncatedSeries(tuple(coeffs))


def cos_series(order):
    coeffs = [ZERO] * (order + 1)
    for k in range(0, order + 1, 2):
        coeffs[k] = Fraction((-1) ** (k // 2), math.factorial(k))
    return TruncatedSeries(tuple(coeffs))


def sec_series(order):
    return cos_series(order).reciprocal()


def tan_series(order):
    return sin_series(order) * sec_series(order)


def euler_egf(order):
    """sec z + tan z."""
    return sec_series(order) + tan_series(order)


def euler_log_series(order):
    """L = -ln(1 - sin z), which is also the integral of sec z + tan z."""
    check_series_order(order)
    return -(1 - sin_series(order)).log()


# ==================================================
# BIVARIATE SERIES
# ==================================================

@dataclass(frozen=True)
class BivariateSeries:
    """Sum over k <= N of P_k(y) z^k; ``rows[k][j]`` is the coefficient of y^j z^k."""
    rows: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def exp_of_linear(cls, inner: TruncatedSeries, max_y_degree=None):
        """exp(y * inner) for ``inner`` with zero constant term.

        [y^j] is inner^j / j!, whose first nonzero term is at z^j, so the
        y-degree of row k never exceeds k and the expansion terminates.
        """
        if inner.coeffs[0] != 0:
            raise PreconditionError("exp(y * L) needs L(0) = 0")
        order = inner.order
        top = order if max_y_degree is None else min(max_y_degree, order)
        power = TruncatedSeries.constant(1, order)
        slices = []
        for j in range(top + 1):
            slices.append(power * Fraction(1, math.factorial(j)))
            power = power * inner
        rows = tuple(
            tuple(slices[j].coeffs[k] for j in range(min(k, top) + 1))
            for k in range(order + 1)
        )
        return cls(rows)

    @property
    def order(self):
        return len(self.rows) - 1

    def coefficient(self, j, k):
        row = self.rows[k]
        return row[j] if 0 <= j < len(row) else ZERO

    def y_slice(self, j) -> TruncatedSeries:
        """[y^j] as a series in z."""
        return TruncatedSeries(tuple(self.coefficient(j, k) for k in range(self.order + 1)))

    def specialize(self, y) -> TruncatedSeries:
        y = Fraction(y)
        return TruncatedSeries(tuple(
            sum((c * y ** j for j, c in enumerate(row)), ZERO) for row in self.rows
        ))

    def y_derivative_at(self, y) -> TruncatedSeries:
        y = Fraction(y)
        return TruncatedSeries(tuple(
            sum((j * c * y ** (j - 1) for j, c in enumerate(row) if j), ZERO) for row in self.rows
        ))


# ==================================================
# GENERATING FUNCTIONS OF THE ENUMERATION
# ==================================================

def euler_numbers(count) -> List[int]:
    """e_1..e_count with e_n = n! [z^n] L, so e_1..e_5 = 1, 1, 1, 2, 5."""
    check_series_order(count)
    series = euler_log_series(count)
    values = []
    for n in range(1, count + 1):
        value = series.scaled_coefficient(n)
        if value.denominator != 1:
            raise ArithmeticError(f"e_{n} = {value} is not an integer")
        values.append(int(value))
    return values


def ftilde(order, max_y_degree=None) -> BivariateSeries:
    """(1 / (1 - sin z))^y = exp(y L), truncated at z^order."""
    check_series_order(order)
    return BivariateSeries.exp_of_linear(euler_log_series(order), max_y_degree)


def table_lr_from_series(n_max) -> CountTable:
    """entry(n, m) = (n-1)! [y^(m-1) z^(n-1)] Ftilde for 1 <= m <= n <= n_max."""
    if n_max < 1:
        raise PreconditionError(f"n_max must be at least 1, got {n_max}")
    series = ftilde(n_max - 1)
    table = CountTable(Statistic.LR, Engine.SERIES, n_max)
    for n in range(1, n_max + 1):
        scale = math.factorial(n - 1)
        for m in range(1, n + 1):
            value = series.coefficient(m - 1, n - 1) * scale
            if value.denominator != 1 or value < 0:
                raise ArithmeticError(f"series entry ({n}, {m}) = {value} is not a count")
            if value:
                table.add(n, m, int(value))
    logger.info(f"Series engine built the lr table up to n={n_max}")
    return table


def euler_power_identity(m_bar, order) -> bool:
    """(sum e_n z^n / n!)^m / m! against the series table's column m+1.

    Also checks that [y^m] Ftilde equals L^m / m! with L = -ln(1 - sin z).
    """
    if m_bar < 1:
        raise PreconditionError(f"m must be at least 1, got {m_bar}")
    check_series_order(order)
    euler = TruncatedSeries(
        (ZERO,) + tuple(Fraction(e, math.factorial(n))
                        for n, e in enumerate(euler_numbers(order), start=1))
    )
    lhs = euler ** m_bar * Fraction(1, math.factorial(m_bar))

    table = table_lr_from_series(order + 1)
    rhs = TruncatedSeries(tuple(
        Fraction(table.entry(n + 1, m_bar + 1), math.factorial(n)) for n in range(order + 1)
    ))

    log_power = euler_log_series(order) ** m_bar * Fraction(1, math.factorial(m_bar))
    y_slice = ftilde(order).y_slice(m_bar)

    holds = lhs == rhs and y_slice == log_power
    if not holds:
        logger.error(f"Euler power identity fails for m={m_bar} through order {order}")
    return holds


def cycle_egf(order) -> TruncatedSeries:
    """-ln(1 - sin z) / (1 - sin z): total cycles over cycle-up-down permutations."""
    check_series_order(order)
    return euler_log_series(order) * (1 - sin_series(order)).reciprocal()


def f2_series(order) -> TruncatedSeries:
    """Trees whose max-path has exactly two nodes, built from the decomposition.

    a_n counts nonempty trees (sec + tan - 1) and b_m counts a node carrying a
    possibly empty tree (the integral of sec + tan); each pair merges in
    (n+m-1)! / (m! (n-1)!) ways into a tree of size n + m + 1.
    """
    check_series_order(order)
    egf = euler_egf(order)
    rooted = egf.integral()
    a = [egf.scaled_coefficient(n) for n in range(order + 1)]
    b = [rooted.scaled_coefficient(m) for m in range(order + 1)]
    coeffs = [ZERO] * (order + 1)
    for n in range(1, order + 1):
        for m in range(1, order - n):
            s = n + m + 1
            coeffs[s] += a[n] * b[m] / ((n + m) * s * math.factorial(m) * math.factorial(n - 1))
    return TruncatedSeries(tuple(coeffs))


def f2_identity_chain(order) -> List[Tuple[str, TruncatedSeries]]:
    """Every stage of the simplification of f2'' down to ln(1/(1 - sin z)) / (1 - sin z).

    All stages are truncated at order - 2, where f2'' is known exactly.
    """
    if order < 3:
        raise PreconditionError(f"the f2 chain needs order at least 3, got {order}")
    check_series_order(order)
    top = order - 2
    sin, cos = sin_series(order), cos_series(order)
    half = z_series(order, Fraction(1, 2))
    sin_h, cos_h = sin.compose(half), cos.compose(half)
    sec = cos.reciprocal()
    one_minus_sin_inv = (1 - sin).reciprocal()

    f_a_t2 = euler_egf(order).integral()
    f_a_t2_closed = -cos.log() - (cos_h - sin_h).log() + (cos_h + sin_h).log()
    f_t1 = euler_egf(order) - 1

    stages = [
        ("f2''", f2_series(order).derivative().derivative()),
        ("f_a_t2 * f_t1'", f_a_t2 * f_t1.derivative()),
        ("closed f_a_t2 * sec (sec + tan)", f_a_t2_closed * sec * (sec + tan_series(order))),
        ("ln((cos(z/2) + sin(z/2)) / (cos z (cos(z/2) - sin(z/2)))) (1 + sin) / cos^2",
         ((cos_h + sin_h) / (cos * (cos_h - sin_h))).log() * (1 + sin) * sec * sec),
        ("ln((1 + 2 sin(z/2) cos(z/2)) / (cos z (2 cos^2(z/2) - 1))) / (1 - sin)",
         ((1 + 2 * sin_h * cos_h) / (cos * (2 * cos_h * cos_h - 1))).log() * one_minus_sin_inv),
        ("ln((1 + sin) / cos^2) / (1 - sin)", ((1 + sin) * sec * sec).log() * one_minus_sin_inv),
        ("ln(1 / (1 - sin)) / (1 - sin)", one_minus_sin_inv.log() * one_minus_sin_inv),
        ("cycle EGF", cycle_egf(order)),
    ]
    return [(name, series.truncate(top)) for name, series in stages]


def f2_identity_check(order) -> bool:
    """True iff every stage of :func:`f2_identity_chain` agrees through order - 2."""
    chain = f2_identity_chain(order)
    reference_name, reference = chain[0]
    for name, series in chain[1:]:
        if series != reference:
            logger.error(f"f2 chain breaks at '{name}' (compared with {reference_name})")
            return False
    return True


# ==================================================
# TRIVARIATE F(x, y, z) AND ITS PDE
# ==================================================

Monomial = Tuple[int, int, int]

PDE_RING, PX, PY, PZ = ring('x,y,z', QQ)


def _to_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


@dataclass(frozen=True)
class TrivariateTruncation:
    """sum over trees of x^o y^l z^n / n! for n <= order, keyed by (o, l, n)."""
    order: int
    coeffs: Dict[Monomial, Fraction]

    @classmethod
    def from_trees(cls, order):
        if order < 1:
            raise PreconditionError(f"order must be at least 1, got {order}")
        counts: Dict[Monomial, int] = {}
        for tree in walk_generating_tree(order):
            s = stats(tree)
            key = (s.o, s.l, s.n)
            counts[key] = counts.get(key, 0) + 1
        coeffs = {key: Fraction(c, math.factorial(key[2])) for key, c in counts.items()}
        return cls(order, coeffs)

    def count(self, o, l, n):  # noqa: E741
        return self.coeffs.get((o, l, n), ZERO) * math.factorial(n)

    def as_poly(self):
        return PDE_RING({mono: QQ(c.numerator, c.denominator) for mono, c in self.coeffs.items()})


def pde_residual(F: TrivariateTruncation) -> Fraction:
    """Largest |coefficient| of (1-x-y)F - xy - x(1-2x)F_x - (xz-1)F_z.

    Only monomials of z-degree <= order - 1 are exact. Coefficients of F at
    z-degree 0 (the boundary F(x, y, 0) = 0) count toward the residual too.
    """
    f = F.as_poly()
    residual = (1 - PX - PY) * f - PX * PY - PX * (1 - 2 * PX) * f.diff(PX) - (PX * PZ - 1) * f.diff(PZ)
    worst = max((abs(_to_fraction(c)) for mono, c in residual.terms() if mono[2] <= F.order - 1),
                default=ZERO)
    boundary = max((abs(_to_fraction(c)) for mono, c in f.terms() if mono[2] == 0), default=ZERO)
    if worst or boundary:
        logger.error(f"PDE residual {worst}, boundary residual {boundary} at order {F.order}")
    return max(worst, boundary)
