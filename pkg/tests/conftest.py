import pytest

from poncelet_loci.billiards import find_caustic
from poncelet_loci.conic_core import Ellipse

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def E21():
    return Ellipse(2.0, 1.0)


@pytest.fixture(scope="session")
def caustic21(E21):
    return find_caustic(E21)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
