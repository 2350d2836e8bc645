from __future__ import annotations

import itertools

import pytest

from kecs.graph import Graph, KEdgeColoring, admissible, validate_coloring


def enumerate_nuk(g: Graph, k: int, w=None, wc=None) -> int:
    """Optimum by trying every color vector; no pruning, tiny graphs only."""
    assert len(g.edges) <= 9
    best = 0
    for colors in itertools.product(range(k + 1), repeat=len(g.edges)):
        c = KEdgeColoring(k, dict(zip(g.edges, colors)))
        if not validate_coloring(g, c, wc):
            best = max(best, c.weight(w))
    return best


@pytest.fixture
def c4() -> Graph:
    return Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))


@pytest.fixture
def p4() -> Graph:
    """Path with four edges."""
    return Graph(5, ((0, 1), (1, 2), (2, 3), (3, 4)))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
