import pytest

from helpers import ACCEPTANCE_LINES, synthetic_bank


@pytest.fixture
def bank213():
    return synthetic_bank(213, title="Quiz4")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
