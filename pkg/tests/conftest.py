import os

import numpy as np
import pytest

from msoct.construction import MsParams, find_extrema

SEED = int(os.environ.get("MSOCT_SEED", "0"))

# the three worked cases
PARABOLIC = (1.0, 1.7, 3.0)
HYPERBOLIC_Y = (0.5, 2.11803, 4.06155)
ELLIPTIC_Y = (0.5, 2.0, 6.0)

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def parabolic():
    return MsParams(*PARABOLIC)


@pytest.fixture(scope="session")
def hyperbolic():
    return MsParams.from_y(*HYPERBOLIC_Y, kind="hyperbolic")


@pytest.fixture(scope="session")
def elliptic():
    return MsParams.from_y(*ELLIPTIC_Y, kind="elliptic")


@pytest.fixture(scope="session")
def parabolic_ex(parabolic):
    return find_extrema(parabolic)


@pytest.fixture(scope="session")
def hyperbolic_ex(hyperbolic):
    return find_extrema(hyperbolic)


@pytest.fixture(scope="session")
def elliptic_ex(elliptic):
    return find_extrema(elliptic)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
