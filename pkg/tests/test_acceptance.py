"""One test per acceptance criterion; each prints a PASS/FAIL line (run with -s to see them)."""

import pytest

from handlebody.acceptance import CHECKS


@pytest.mark.parametrize("check", CHECKS, ids=[f"c{c.number:02d}_{c.__name__[6:]}" for c in CHECKS])
def test_criterion(check):
    result = check()
    print(result.line())
    assert result.passed, result.detail
