import numpy as np
import pytest
from hypothesis import HealthCheck, assume, settings, strategies as st

from loxostab.core import fixed_points, normalize
from loxostab.avoided import build_avoided_g
from loxostab.reference import example_map

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

coord = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, coord, coord)


@st.composite
def admissible_coefficients(draw):
    a, b, c, d = (draw(complexes) for _ in range(4))
    det = a * d - b * c
    assume(abs(det) > 1e-3)
    return a, b, c, d


@st.composite
def loxodromic_maps(draw):
    """Normalized maps with trace well away from [-2, 2] and c away from 0."""
    g = normalize(*draw(admissible_coefficients()))
    tr = g.trace
    assume(abs(tr.imag) > 1e-3 or abs(tr.real) > 2.001)
    assume(abs(g.c) > 1e-2)
    return g


@pytest.fixture(scope="session")
def g():
    return example_map()


@pytest.fixture(scope="session")
def data(g):
    return fixed_points(g)


@pytest.fixture(scope="session")
def region(data):
    return build_avoided_g(data, 0.005, 2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# ---------------------------------------------------------------- acceptance summary

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance_log(request):
    """Append (criterion, passed, note); printed one line each after the run."""
    return request.config.stash[_ACCEPTANCE]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = sorted(config.stash.get(_ACCEPTANCE, []))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, note in lines:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {number}: {note}")
