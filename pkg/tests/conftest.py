import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ekron.field import NumberField  # noqa: E402


@pytest.fixture(scope="session")
def Q():
    return NumberField.rational()


@pytest.fixture(scope="session")
def Qi():
    return NumberField.quadratic(-1)


@pytest.fixture(scope="session")
def Q5():
    return NumberField.quadratic(5)


@pytest.fixture(scope="session")
def Z5():
    return NumberField.cyclotomic(5)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
