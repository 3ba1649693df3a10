import pytest

from quatram.localfield import make_base_field

CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def Q2():
    return make_base_field(1, 1)


@pytest.fixture(scope="session")
def Q2i():
    """f = 1, e = 2, pi^2 + 2 pi + 2 = 0 (pi = i - 1)."""
    return make_base_field(1, 2, eis=(2, 2))


@pytest.fixture(scope="session")
def EF2I():
    """f = 2, e = 2, contains i."""
    return make_base_field(2, 2, eis=(2, 2))


@pytest.fixture(scope="session")
def F3E2():
    """f = 3, e = 2, i not in K."""
    return make_base_field(3, 2, eis=(-2, 0))


@pytest.fixture(scope="session")
def Q2SQRT2():
    """f = 1, e = 2, i not in K."""
    return make_base_field(1, 2, eis=(-2, 0))
