import pytest

from fortlib.forts import enumerate_minimal_forts
from fortlib.graph import build_from_edge_list, build_hypercube

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def q():
    cache = {}

    def get(d):
        if d not in cache:
            cache[d] = build_hypercube(d)
        return cache[d]

    return get


@pytest.fixture(scope="session")
def census(q):
    cache = {}

    def get(d):
        if d not in cache:
            cache[d] = enumerate_minimal_forts(q(d))
        return cache[d]

    return get


@pytest.fixture
def fig7_graph():
    # 1-2, 2-3, ..., 6-7, 7-2 from the figure, shifted to 0-based
    return build_from_edge_list(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
