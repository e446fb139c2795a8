from fractions import Fraction

import pytest

from services.series_service import (
    TrivariateTruncation,
    TruncatedSeries,
    check_series_order,
    cos_series,
    cycle_egf,
    euler_egf,
    euler_log_series,
    euler_numbers,
    euler_power_identity,
    f2_identity_chain,
    f2_identity_check,
    f2_series,
    ftilde,
    pde_residual,
    sec_series,
    sin_series,
    table_lr_from_series,
    tan_series,
    z_series,
)
from tests.conftest import CYCLE_TOTALS, EULER_NUMBERS, RL_ROWS, assert_rows_match
from utils.errors import PreconditionError, SizeBoundExceeded

ORDER = 12


def test_euler_numbers():
    assert euler_numbers(12) == EULER_NUMBERS
    assert euler_numbers(0) == []


def test_euler_egf_counts_alternating_permutations():
    egf = euler_egf(9)
    assert [int(egf.scaled_coefficient(k)) for k in range(10)] == EULER_NUMBERS[:10]


def test_euler_log_series_is_integral_of_euler_egf():
    assert euler_log_series(ORDER) == euler_egf(ORDER - 1).integral()


def test_trig_identities():
    sin, cos, sec, tan = sin_series(ORDER), cos_series(ORDER), sec_series(ORDER), tan_series(ORDER)
    one = TruncatedSeries.constant(1, ORDER)
    assert sin * sec == tan
    assert sec * sec - tan * tan == one
    assert sin * sin + cos * cos == one
    assert sec * cos == one


def test_calculus_round_trips():
    f = euler_egf(ORDER)
    assert f.integral().derivative() == f
    assert sin_series(ORDER).exp().log() == sin_series(ORDER)
    assert sin_series(ORDER).compose(z_series(ORDER)) == sin_series(ORDER)


def test_truncation_order_is_tracked():
    f = sin_series(5)
    assert f.derivative().order == 4
    assert f.integral().order == 6
    assert (f * sin_series(3)).order == 3
    assert f.truncate(2).coeffs == (0, 1, 0)


def test_domain_errors():
    with pytest.raises(PreconditionError):
        TruncatedSeries.constant(1, 0).derivative()
    with pytest.raises(PreconditionError):
        sin_series(4).reciprocal()
    with pytest.raises(PreconditionError):
        sin_series(4).coefficient(5)
    with pytest.raises(PreconditionError):
        cos_series(4).exp()
    with pytest.raises(PreconditionError):
        sin_series(4).log()


def test_series_order_bound():
    with pytest.raises(SizeBoundExceeded):
        check_series_order(17)
    with pytest.raises(SizeBoundExceeded):
        euler_log_series(17)
    with pytest.raises(PreconditionError):
        check_series_order(-1)


def test_series_order_bound_is_read_at_call_time(tight_limits):
    with pytest.raises(SizeBoundExceeded):
        cycle_egf(9)


def test_ftilde_slices():
    F = ftilde(ORDER)
    assert F.coefficient(0, 0) == 1
    assert F.coefficient(1, 1) == 1
    assert F.y_slice(1) == euler_log_series(ORDER)
    assert F.specialize(1) == (1 - sin_series(ORDER)).reciprocal()
    assert F.specialize(0) == TruncatedSeries.constant(1, ORDER)


def test_lr_table_from_series(lr_expected):
    table = table_lr_from_series(10)
    assert table.entry(1, 1) == 1
    assert_rows_match(table, lr_expected, range(2, 11))


@pytest.mark.parametrize('m', range(1, 6))
def test_euler_power_identity(m):
    assert euler_power_identity(m, 11)


def test_cycle_egf():
    cycles = cycle_egf(12)
    assert [int(cycles.scaled_coefficient(n)) for n in range(1, 13)] == CYCLE_TOTALS
    assert cycles == ftilde(12).y_derivative_at(1)


def test_f2_matches_second_column():
    f2 = f2_series(10)
    assert [f2.scaled_coefficient(s) for s in range(3, 11)] == [RL_ROWS[s][1] for s in range(3, 11)]
    assert f2.coefficient(0) == f2.coefficient(1) == f2.coefficient(2) == 0


def test_f2_chain():
    assert f2_identity_check(12)
    chain = f2_identity_chain(12)
    assert len(chain) == 8
    assert all(series.order == 10 for _, series in chain)
    with pytest.raises(PreconditionError):
        f2_identity_chain(2)


def test_pde_residual_vanishes():
    F = TrivariateTruncation.from_trees(8)
    assert F.count(1, 1, 1) == 1
    assert F.count(2, 2, 3) == 1
    assert pde_residual(F) == 0


def test_pde_residual_detects_a_wrong_count():
    F = TrivariateTruncation.from_trees(6)
    coeffs = dict(F.coeffs)
    coeffs[(2, 2, 4)] += Fraction(1, 24)
    assert pde_residual(TrivariateTruncation(F.order, coeffs)) > 0


def test_pde_boundary_counts():
    F = TrivariateTruncation(3, {(0, 0, 0): Fraction(1)})
    assert pde_residual(F) >= 1
