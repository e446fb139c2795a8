import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.permutation_service import (
    Permutation,
    andre_set,
    collapse_phi,
    cycle_up_down_cycle_count,
    cycle_up_down_cycles,
    extension_witness,
    in_res,
    in_strict_andre,
    is_andre,
    lr_minima,
    phi,
    phi_inverse,
    res_set,
    restriction,
    rl_minima,
    strict_andre_set,
)
from services.tree_service import (
    Orientation,
    canonical_drawing,
    iter_trees,
    max_path,
    min_path,
    random_tree,
)
from tests.conftest import CYCLE_TOTALS, FIGURE_PERMUTATION, RES_5
from utils.errors import (
    InvalidPermutation,
    OrientationViolation,
    PreconditionError,
    SizeBoundExceeded,
)

small_permutations = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))
).map(Permutation)

random_trees = st.builds(random_tree, st.integers(min_value=1, max_value=12), st.randoms())
orientations = st.sampled_from(list(Orientation))


def test_permutation_validation():
    with pytest.raises(InvalidPermutation):
        Permutation((1, 1))
    with pytest.raises(InvalidPermutation):
        Permutation(())
    with pytest.raises(InvalidPermutation):
        Permutation.of(2, 3)
    assert Permutation.parse('(2314)') == Permutation.of(2, 3, 1, 4)
    assert str(Permutation.of(3, 1, 2)) == '3 1 2'


def test_res_5_listing():
    found = res_set(5)
    assert len(found) == 16
    assert {str(p) for p in found} == set(RES_5)


def test_res_is_not_inside_andre():
    pi = Permutation.parse('3 2 6 5 1 4')
    assert in_res(pi)
    assert not is_andre(pi)
    assert pi not in set(andre_set(6))


def test_extension_witnesses():
    assert extension_witness(Permutation.parse('3 2 6 5 1 4')) == Permutation.parse('3 2 6 5 7 1 4')
    assert extension_witness(Permutation.parse('2 1')) == Permutation.parse('2 1 3')
    assert extension_witness(Permutation.of(1)) == Permutation.of(1)


def test_extension_witness_needs_member():
    with pytest.raises(PreconditionError):
        extension_witness(Permutation.of(1, 2))


def test_strict_andre_3():
    assert strict_andre_set(3) == [Permutation.of(2, 1, 3)]


def test_orientation_violations():
    with pytest.raises(OrientationViolation) as excinfo:
        phi_inverse(Permutation.of(1, 2), Orientation.LEFT)
    assert excinfo.value.factor == (1, 2)
    assert excinfo.value.orientation == 'left-oriented'

    with pytest.raises(OrientationViolation) as excinfo:
        phi_inverse(Permutation.of(2, 1), Orientation.STANDARD)
    assert excinfo.value.factor == (2, 1)

    for orientation in Orientation:
        with pytest.raises(OrientationViolation, match='larger child on the left'):
            phi_inverse(Permutation.of(3, 1, 2), orientation)


def test_figure_minima():
    pi = Permutation(FIGURE_PERMUTATION)
    assert lr_minima(pi) == {11, 7, 6, 5, 2, 1}
    assert rl_minima(pi) == {1, 3, 12}


def test_restriction():
    sigma = Permutation.parse('3 2 6 5 7 1 4')
    assert restriction(sigma, 6) == Permutation.parse('3 2 6 5 1 4')
    assert restriction(sigma, 7) == sigma
    with pytest.raises(InvalidPermutation):
        restriction(sigma, 0)
    with pytest.raises(InvalidPermutation):
        restriction(sigma, 8)


@pytest.mark.parametrize('n', range(1, 7))
def test_membership_matches_res_set(n):
    members = set(res_set(n))
    tested = {Permutation(p) for p in itertools.permutations(range(1, n + 1))
              if in_res(Permutation(p))}
    assert tested == members


def test_res_set_bound(tight_limits):
    with pytest.raises(SizeBoundExceeded):
        res_set(7)


@pytest.mark.parametrize('n', range(1, 8))
def test_collapse_matches_symmetric_order(n):
    for tree in iter_trees(n):
        for orientation in Orientation:
            drawing = canonical_drawing(tree, orientation)
            assert collapse_phi(drawing) == phi(drawing)


@given(random_trees, orientations)
@settings(max_examples=200)
def test_phi_round_trip(tree, orientation):
    assert phi_inverse(phi(canonical_drawing(tree, orientation)), orientation) == tree


@given(random_trees)
def test_minima_follow_paths(tree):
    pi = phi(canonical_drawing(tree, Orientation.LEFT))
    assert lr_minima(pi) == frozenset(min_path(tree))
    assert rl_minima(pi) == frozenset(max_path(tree))


@given(small_permutations)
@settings(max_examples=300)
def test_members_rebuild_their_permutation(pi):
    if in_res(pi):
        assert phi(canonical_drawing(phi_inverse(pi, Orientation.LEFT), Orientation.LEFT)) == pi
    if is_andre(pi):
        tree = phi_inverse(pi, Orientation.STANDARD)
        assert phi(canonical_drawing(tree, Orientation.STANDARD)) == pi


@given(small_permutations, st.data())
def test_res_closed_under_restriction(pi, data):
    k = data.draw(st.integers(min_value=1, max_value=pi.size))
    if in_res(pi):
        assert in_res(restriction(pi, k))


@given(small_permutations)
def test_witness_is_a_strict_extension(pi):
    if not in_res(pi):
        return
    sigma = extension_witness(pi)
    assert in_strict_andre(sigma)
    assert restriction(sigma, pi.size) == pi


def test_cycle_up_down_cycles():
    assert cycle_up_down_cycles((1, 2, 3)) == 3
    assert cycle_up_down_cycles((3, 1, 2)) == 1
    assert cycle_up_down_cycles((2, 3, 1)) is None


@pytest.mark.parametrize('n', range(1, 9))
def test_cycle_up_down_totals(n):
    assert cycle_up_down_cycle_count(n) == CYCLE_TOTALS[n - 1]


def test_cycle_up_down_bound(tight_limits):
    with pytest.raises(SizeBoundExceeded):
        cycle_up_down_cycle_count(6)
    with pytest.raises(PreconditionError):
        cycle_up_down_cycle_count(0)
