import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from sheaflab.complex import SimplicialComplex, build_from_facets

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def full_triangle() -> SimplicialComplex:
    return build_from_facets(3, [(1, 2, 3)])


@pytest.fixture
def hollow() -> SimplicialComplex:
    return build_from_facets(3, [(1, 2), (1, 3), (2, 3)])
