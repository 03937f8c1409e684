"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or use
``ringclass verify`` for the same checks without pytest.
"""

import pytest

from ringclass.verify import CHECKS


@pytest.mark.slow
@pytest.mark.parametrize("check", CHECKS, ids=[c.__name__.removeprefix("check_") for c in CHECKS])
def test_criterion(check):
    result = check()
    print(result.line())
    assert result.passed, result.line()
