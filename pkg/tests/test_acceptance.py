"""Every acceptance criterion at its exact tolerance, one PASS/FAIL line each."""

import pytest

from flagspread.checks import CRITERIA, run_criterion

LINES: list[str] = []

_MANDATORY = [c for c in CRITERIA if not c.stretch]
_STRETCH = [c for c in CRITERIA if c.stretch]


def _run(c):
    res = run_criterion(c)
    print(res.line())
    LINES.append(res.line())
    return res


@pytest.mark.parametrize("criterion", _MANDATORY, ids=lambda c: f"criterion-{c.cid}")
def test_criterion(criterion):
    res = _run(criterion)
    assert res.passed, res.line()


@pytest.mark.stretch
@pytest.mark.parametrize("criterion", _STRETCH, ids=lambda c: f"criterion-{c.cid}")
def test_stretch_criterion(criterion):
    res = _run(criterion)
    assert res.passed, res.line()


def test_fault_injection_is_caught():
    res = run_criterion(CRITERIA[0], fault="suzuki-sigma")
    print("negative control:", res.line())
    assert not res.passed
    assert res.failures == ["sigma^2 != Frobenius"]
