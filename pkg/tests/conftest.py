import numpy as np
import pytest

from barriers_lab.classical import repetition_code
from barriers_lab.hgp import hgp2, hgp3, hgp4


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture(scope="session")
def toric3():
    rep = repetition_code(2, True)
    return hgp3(rep, rep, rep)


@pytest.fixture(scope="session")
def toric4():
    rep = repetition_code(2, True)
    return hgp4(rep, rep, rep, rep)


@pytest.fixture(scope="session")
def code512():
    rep = repetition_code(2)
    return hgp2(rep, rep)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
