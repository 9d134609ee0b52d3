"""Acceptance gate: A1-A10 at their stated tolerances, seed 0.

Each criterion prints one PASS/FAIL line; the lines are also collected for the
terminal summary so a plain ``pytest`` run ends with the full table.
"""

import pytest

from sheaflab import acceptance
from tests import conftest


@pytest.mark.parametrize("name", list(acceptance.CRITERIA))
def test_criterion(name):
    r = acceptance.CRITERIA[name](0)
    line = r.line()
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert r.passed, line


def test_fixture_checks_unit_right_triangle():
    from sheaflab.fixtures import unit_right_triangle

    r = acceptance.complex_checks(unit_right_triangle())
    assert r.passed, r.line()
