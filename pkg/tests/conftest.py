import pytest

from sdpoly.closed_form import assemble
from sdpoly.oracle import enumerate_counts
from sdpoly.series import SeriesRing

ACCEPTANCE_RESULTS: list[str] = []


@pytest.fixture(scope="session")
def table12():
    """Every fixed polyomino up to 12 cells, classified (about 15 s)."""
    return enumerate_counts(12)


@pytest.fixture(scope="session")
def table8():
    return enumerate_counts(8)


@pytest.fixture(scope="session")
def closed320_w1():
    return assemble(SeriesRing(320, w=1))


@pytest.fixture(scope="session")
def closed320_w0():
    return assemble(SeriesRing(320, w=0))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
