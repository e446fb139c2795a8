import pytest

from services.recursion_service import (
    StatPolynomial,
    brute_stat_polynomials,
    g_sequence,
    g_step,
    g_table,
    initial_polynomials,
)
from tests.conftest import assert_rows_match
from utils.errors import RecursionIntegrityError


def test_first_steps():
    ga, gb = initial_polynomials()
    assert ga.is_zero()
    assert gb.terms == {(1, 1, 0): 1}

    ga, gb = g_step(ga, gb)
    assert ga.step == 2
    assert ga.terms == {(1, 1, 1): 1}
    assert gb.is_zero()

    ga, gb = g_step(ga, gb)
    assert ga.terms == {(1, 1, 2): 1}
    assert gb.terms == {(2, 2, 0): 1}


@pytest.mark.parametrize('n', range(1, 9))
def test_recursion_matches_brute_force(n):
    assert g_sequence(n)[-1] == brute_stat_polynomials(n)


def test_table_matches_published_values(rl_expected):
    assert_rows_match(g_table(10), rl_expected, range(1, 11))


def test_polynomial_arithmetic():
    p = StatPolynomial(3, {(1, 2, 1): 2, (2, 1, 0): 1})
    q = StatPolynomial(3, {(1, 2, 1): -2})
    assert (p + q).terms == {(2, 1, 0): 1}
    assert p.partial_x().terms == {(0, 2, 1): 2, (1, 1, 0): 2}
    assert p.partial_v().terms == {(1, 2, 0): 2}
    assert p.at_v_zero().terms == {(2, 1, 0): 1}
    assert p.times(dx=1, dz=1, coeff=3) == StatPolynomial(4, {(2, 2, 1): 6, (3, 1, 0): 3})
    assert p.w_marginal() == {2: 2, 1: 1}
    assert StatPolynomial(3, {(1, 1, 2): 3, (0, 1, 1): 1}).divide_by_v().terms == {(1, 1, 1): 3, (0, 1, 0): 1}
    assert StatPolynomial.zero(3).divide_by_v().is_zero()


def test_integrity_errors():
    with pytest.raises(RecursionIntegrityError):
        StatPolynomial(2, {(1, 1, 0): 1}).divide_by_v()
    with pytest.raises(RecursionIntegrityError):
        StatPolynomial(2) + StatPolynomial(3)
    with pytest.raises(RecursionIntegrityError):
        StatPolynomial(2, {(1, 1, 1): -1}).check_nonnegative('G_A')
    with pytest.raises(RecursionIntegrityError):
        g_step(StatPolynomial.zero(2), StatPolynomial.zero(3))
