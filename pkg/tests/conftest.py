import functools
import os

import pytest
from hypothesis import HealthCheck, settings

from heatflux.stationary import sic_pair

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@functools.lru_cache(maxsize=None)
def pair(d, T):
    return sic_pair(d, T)


@pytest.fixture(scope="session")
def near300():
    return pair(100e-9, 300.0)


@pytest.fixture(scope="session")
def far300():
    return pair(1e-3, 300.0)


@pytest.fixture(scope="session")
def near30():
    return pair(100e-9, 30.0)


@pytest.fixture(scope="session")
def near300_series(near300):
    from heatflux.analysis import build_series
    from heatflux.transient import default_tau_grid

    return build_series(near300, default_tau_grid(near300, 6e-12))


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
