import pytest

from kbresponse.model import ServiceProfile, summarize

TABLE1 = (
    0.546, 0.467, 0.847, 0.325, 0.645,
    0.835, 0.965, 0.628, 0.617, 0.564,
    0.873, 0.674, 0.694, 0.726, 0.734,
)

# printed responsiveness percentages for N = 1..15
TABLE2 = (
    91.3, 84.0, 77.8, 72.4, 67.8,
    63.7, 60.0, 56.8, 53.9, 51.3,
    48.9, 46.7, 44.7, 42.9, 41.2,
)


@pytest.fixture
def table1():
    return ServiceProfile(TABLE1)


@pytest.fixture
def table1_summary(table1):
    return summarize(table1)


@pytest.fixture
def table1_swapped():
    times = list(TABLE1)
    times[6], times[14] = times[14], times[6]
    return ServiceProfile(tuple(times))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LOG: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LOG, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
