import config
from config import Limits
from services.verification_service import property_checks, run_property_suite


def test_suite_passes():
    results = run_property_suite(6)
    assert [r.name for r in results if not r.passed] == []
    assert len(results) == len(property_checks())


def test_suite_is_vacuous_at_size_one():
    assert all(r.passed for r in run_property_suite(1))


def test_injected_fault_is_located():
    results = {r.name: r for r in run_property_suite(5, inject_fault=True)}
    assert not results['engines_agree'].passed
    assert results['engines_agree'].detail == 'lr n=2 stat=2: brute=1 but eco=2'
    assert not results['eco_level_totals'].passed
    assert results['tree_level_sizes'].passed


def test_errors_become_failed_results(tight_limits):
    results = {r.name: r for r in run_property_suite(7)}
    assert not results['tree_level_sizes'].passed
    assert results['tree_level_sizes'].detail.startswith('SizeBoundExceeded')
    assert results['series_identities'].passed


def test_suite_passes_at_default_size():
    assert [r.name for r in run_property_suite(10) if not r.passed] == []


def test_res_listing_respects_lower_tree_bound(monkeypatch):
    monkeypatch.setattr(config, 'LIMITS', Limits(max_tree_size=5, series_order=16, cycle_bound=9))
    assert [r.name for r in run_property_suite(1) if not r.passed] == []
    results = {r.name: r for r in run_property_suite(5)}
    assert results['res_listing_and_non_inclusion'].passed
    assert results['res_listing_and_non_inclusion'].detail == 'res_5 matches the listing'
