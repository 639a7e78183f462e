"""Release gate: ten verification suites, one test per criterion.

Each test prints the suite's pass/fail line and asserts both the verdict
and the suite's runtime budget.  Run with -s to see the lines.
"""

import pytest

from dihedralcalc.acceptance import SUITES, run_suite

_cache: dict = {}


def _run(name: str, budget_seconds: float):
    if name not in _cache:
        _cache[name] = run_suite(name)
    result = _cache[name]
    print(result.line())
    assert result.passed, result.counterexample
    assert result.seconds < budget_seconds
    return result


def test_criterion_01_chevalley_isomorphism():
    result = _run("chevalley", 5)
    assert result.details["cartan_pairs"] == 6


def test_criterion_02_algebra_laws():
    result = _run("algebra", 10)
    # exhaustive triples over every basis for n = 2..8
    assert result.details["associativity_triples"] == \
        sum((2 * n) ** 3 for n in range(2, 9))


def test_criterion_03_concavity_audit():
    _run("concavity", 5)


def test_criterion_04_limit_agreement():
    result = _run("limits", 5)
    assert result.details["pairs_checked"] == \
        sum((2 * n) ** 2 + 2 * n * n for n in range(2, 13))


def test_criterion_05_cone_equalities():
    result = _run("cones", 600)
    assert result.details["certificates"] == 40


def test_criterion_06_facet_irredundancy():
    result = _run("facets", 600)
    assert result.details["rows_certified"] > 0


def test_criterion_07_classical_reduction():
    result = _run("classical", 1)
    assert result.details["rows"] == 6


def test_criterion_08_building_census():
    result = _run("census", 300)
    assert result.details["census_runs"] > 0


def test_criterion_09_semistability_round_trip():
    result = _run("semistable", 600)
    assert result.details["configurations"] == 150


def test_criterion_10_determinism():
    result = _run("determinism", 600)
    assert result.details["artifacts"] == 14


def test_every_suite_registered():
    assert list(SUITES) == [
        "chevalley", "algebra", "concavity", "limits", "cones", "facets",
        "classical", "census", "semistable", "determinism"]
