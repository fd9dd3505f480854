import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from goodred.goodd import enumerate_good_d  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def census():
    """Good d with |d| <= 50000 from |r| <= 10^6."""
    return enumerate_good_d(50000, 10**6, threads=1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
