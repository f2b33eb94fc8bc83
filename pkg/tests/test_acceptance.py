"""Acceptance gate: one test per criterion.

The PASS/FAIL line of every criterion is collected and shown in the
"acceptance criteria" section of the pytest summary.  ``nilhecke selftest``
runs the same checks outside pytest.
"""

from __future__ import annotations

import pytest

from nilhecke import checks

from .conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("check", checks.CRITERIA, ids=lambda c: c.__name__.removeprefix("criterion_"))
def test_criterion(check):
    result = check()
    print(result.line())
    ACCEPTANCE_LINES.append(result.line())
    assert result.passed, result.details
