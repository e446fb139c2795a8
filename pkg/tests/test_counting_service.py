import pytest

from services.count_table import CountTable, Engine, Statistic
from services.counting_service import (
    brute_table,
    brute_tables,
    build_table,
    compare_engines,
    compare_tables,
    cross_check,
    level_sizes,
    series_rl_table,
)
from services.eco_service import perturbed_lr_rule
from tests.conftest import EULER_NUMBERS, assert_rows_match
from utils.errors import PreconditionError, SizeBoundExceeded


def test_brute_force_reproduces_both_tables(lr_expected, rl_expected):
    tables = brute_tables(10)
    assert_rows_match(tables[Statistic.LR], lr_expected, range(2, 11))
    assert_rows_match(tables[Statistic.RL], rl_expected, range(1, 11))


def test_rows_sum_to_level_sizes():
    table = brute_table('rl', 9)
    assert [table.row_sum(n) for n in range(1, 10)] == level_sizes(9)
    assert level_sizes(5) == [1, 1, 2, 5, 16]


@pytest.mark.slow
def test_brute_force_level_eleven():
    table = brute_table(Statistic.LR, 11)
    assert table.row_sum(11) == EULER_NUMBERS[11]


@pytest.mark.parametrize('statistic,engine', [
    ('lr', 'eco'), ('lr', 'series'), ('rl', 'eco'), ('rl', 'recursion'), ('rl', 'series'),
])
def test_every_engine_agrees_with_brute_force(statistic, engine):
    reference = brute_table(statistic, 10)
    assert compare_tables(reference, build_table(statistic, engine, 10)) is None


def test_series_rl_table_defines_two_columns(rl_expected):
    table = series_rl_table(10)
    assert table.columns == frozenset({1, 2})
    assert table.stat_values() == [1, 2]
    assert [table.entry(n, 2) for n in range(3, 11)] == [rl_expected[(n, 2)] for n in range(3, 11)]
    assert not table.defines(3)


def test_invalid_engine_for_statistic():
    with pytest.raises(PreconditionError):
        build_table('lr', 'recursion', 5)
    with pytest.raises(ValueError):
        build_table('lr', 'abacus', 5)


def test_cross_check_agrees():
    report = cross_check(8)
    assert report.agreed
    assert report.first_discrepancy is None
    names = [c.name for c in report.comparisons]
    assert 'rl/brute column 2 vs f2' in names
    assert 'rl/brute column 2 vs cycle-up-down' in names


def test_cross_check_locates_a_perturbed_rule():
    report = cross_check(6, lr_production=perturbed_lr_rule)
    assert not report.agreed
    found = report.first_discrepancy
    assert (found.statistic, found.n, found.stat) == ('lr', 2, 2)
    assert (found.expected, found.found) == (1, 2)
    assert found.describe() == 'lr n=2 stat=2: brute=1 but eco=2'


def test_compare_engines_uses_first_table_as_reference():
    tables = [build_table('lr', e, 2) for e in ('brute', 'eco', 'series')]
    comparisons = compare_engines(tables)
    assert [c.name for c in comparisons] == ['lr/brute vs lr/eco', 'lr/brute vs lr/series']
    assert all(c.agreed for c in comparisons)


def test_compare_tables_reports_first_difference():
    a = CountTable(Statistic.RL, Engine.BRUTE, 3)
    b = CountTable(Statistic.RL, Engine.ECO, 3)
    a.add(3, 1)
    a.add(3, 2, 5)
    b.add(3, 1)
    b.add(3, 2, 4)
    found = compare_tables(a, b)
    assert (found.n, found.stat, found.expected, found.found) == (3, 2, 5, 4)


def test_negative_counts_rejected():
    with pytest.raises(PreconditionError):
        CountTable(Statistic.LR, Engine.BRUTE, 2).add(1, 1, -1)


def test_table_size_bound(tight_limits):
    with pytest.raises(SizeBoundExceeded):
        build_table('rl', 'brute', 7)
