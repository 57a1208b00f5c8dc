import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gaussbc import GaussianState, random_covariance  # noqa: E402

ACCEPTANCE_LINES = []


def random_state(n, seed, temp_bound=10.0, squeeze_bound=1.0, pure=False, nu=None):
    rng = np.random.default_rng(seed)
    gamma = random_covariance(n, pure=pure, squeeze_bound=squeeze_bound,
                              temp_bound=temp_bound, seed=rng, nu=nu)
    return GaussianState(rng.normal(size=2 * n), gamma)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
