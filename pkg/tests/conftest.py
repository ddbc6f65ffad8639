import numpy as np
import pytest

from relsteer import qstate


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def singlet():
    return qstate.singlet()


@pytest.fixture
def mixed():
    return qstate.maximally_mixed()


@pytest.fixture
def ket00():
    return qstate.product_state(0)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
