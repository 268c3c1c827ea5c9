import os

import numpy as np
import pytest


@pytest.fixture
def seed():
    return int(os.environ.get("REDUCTIONLAB_SEED", "42"))


@pytest.fixture
def rng(seed):
    return np.random.default_rng(seed)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
