"""Acceptance gate: every reference-result criterion, one test per group.

Each test prints one PASS/FAIL line per individual check (visible with
``pytest -v -s`` or on failure) and fails if any check in its group fails.
Tolerances are those of the checks themselves: exact rational equality for
the small-instance values, zero tolerance booleans for the property suite,
3-sigma bounds for the statistical checks.
"""

import pytest

from ndisco import checks


@pytest.mark.parametrize("group", [name for name, _ in checks.ALL_CHECKS])
def test_acceptance(group):
    results = checks.run_checks([group])
    assert results, f"check group {group} produced no results"
    failures = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"[{mark}] {r.name}: expected {r.expected}, actual {r.actual}")
        if not r.passed:
            failures.append(f"{r.name}: expected {r.expected}, actual {r.actual}")
    assert not failures, "; ".join(failures)
