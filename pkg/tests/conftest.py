import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from vortex_wigner import PacketSpec

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def gauss():
    return PacketSpec.from_ratios(0.01, 0.0, 0, 0)


@pytest.fixture
def moving():
    return PacketSpec.from_ratios(0.01, 1.0, 2, 1)
