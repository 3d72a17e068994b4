import pytest

from sbtsort.oracle import build_table
from sbtsort.perm_core import Permutation

# lines collected by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []

_TABLES = {}


def table(n):
    if n not in _TABLES:
        _TABLES[n] = build_table(n)
    return _TABLES[n]


@pytest.fixture(scope="session")
def tables():
    return table


def P(text):
    return Permutation.parse(text)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
