import pytest

import config
from config import Limits

# Published triangles: lr rows n = 2..10 from m = 2, rl rows n = 1..10 from r = 1
LR_ROWS = {
    2: [1],
    3: [1, 1],
    4: [1, 3, 1],
    5: [2, 7, 6, 1],
    6: [5, 20, 25, 10, 1],
    7: [16, 70, 105, 65, 15, 1],
    8: [61, 287, 490, 385, 140, 21, 1],
    9: [272, 1356, 2548, 2345, 1120, 266, 28, 1],
    10: [1385, 7248, 14698, 15204, 8715, 2772, 462, 36, 1],
}

RL_ROWS = {
    1: [1],
    2: [1],
    3: [1, 1],
    4: [2, 3],
    5: [5, 10, 1],
    6: [16, 38, 7],
    7: [61, 165, 45, 1],
    8: [272, 812, 288, 13],
    9: [1385, 4478, 1936, 136, 1],
    10: [7936, 27408, 13836, 1320, 21],
}

EULER_NUMBERS = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792]

CYCLE_TOTALS = [1, 3, 10, 38, 165, 812, 4478, 27408, 184529, 1356256, 10809786, 92892928]

RES_5 = [
    '3 2 5 1 4', '4 2 5 1 3', '2 1 4 3 5', '3 2 4 1 5',
    '5 3 2 4 1', '3 2 5 4 1', '4 3 2 5 1', '3 2 1 5 4',
    '4 2 1 5 3', '5 2 1 4 3', '4 3 2 1 5', '5 3 2 1 4',
    '5 4 2 1 3', '2 1 5 4 3', '4 3 5 2 1', '5 4 3 2 1',
]

ANDRE_4 = ['2 3 1 4', '1 2 3 4', '2 1 3 4', '1 3 2 4', '2 4 1 3']

FIGURE_PERMUTATION = (11, 7, 6, 10, 9, 5, 8, 2, 1, 13, 4, 14, 3, 12)


def lr_cells():
    return {(n, m): count for n, row in LR_ROWS.items() for m, count in enumerate(row, start=2)}


def rl_cells():
    return {(n, r): count for n, row in RL_ROWS.items() for r, count in enumerate(row, start=1)}


def assert_rows_match(table, expected, sizes):
    """Every cell of the given rows, zeros included, equals the published value."""
    for n in sizes:
        for stat in range(1, n + 1):
            assert table.entry(n, stat) == expected.get((n, stat), 0), (n, stat)


@pytest.fixture
def lr_expected():
    return lr_cells()


@pytest.fixture
def rl_expected():
    return rl_cells()


@pytest.fixture
def tight_limits(monkeypatch):
    limits = Limits(max_tree_size=6, series_order=8, cycle_bound=5)
    monkeypatch.setattr(config, 'LIMITS', limits)
    return limits
