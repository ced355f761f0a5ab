import pytest

from iwcontract.algebra import StructureConstants
from iwcontract.corpus import by_name, load_corpus

ACCEPTANCE_RESULTS: list[str] = []


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def named(corpus):
    return by_name(corpus)


@pytest.fixture
def h3():
    return StructureConstants(3, {(1, 2, 3): 1})


@pytest.fixture
def so3():
    return StructureConstants(3, {(1, 2, 3): 1, (2, 3, 1): 1, (1, 3, 2): -1})


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
