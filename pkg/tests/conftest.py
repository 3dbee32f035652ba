import pytest

from periodic_twist.corpus import load_example


@pytest.fixture(scope="session")
def s6():
    return load_example("s6")


@pytest.fixture(scope="session")
def s8():
    return load_example("s8")


@pytest.fixture(scope="session")
def toys():
    return load_example("toys")


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.split()[0].rstrip("abcdefghijklmnopqrstuvwxyz")), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
