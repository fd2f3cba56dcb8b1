import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from treeenergy.enumeration import EnumSpec, enumerate_trees  # noqa: E402

_ACCEPTANCE_LINES = []


def record_criterion(line):
    _ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture
def acceptance_log():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def small_trees():
    """Every tree with n <= 9 vertices (no degree bound), by n."""
    return {n: list(enumerate_trees(EnumSpec(n, max(n - 1, 1)))) for n in range(1, 10)}
