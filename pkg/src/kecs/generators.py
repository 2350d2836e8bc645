"""Small named graphs, seeded random graph families and 2-CNF formulas."""

from __future__ import annotations

import random
from itertools import combinations, combinations_with_replacement

from .errors import InputError
from .graph import Graph
from .sat import TwoCnf


def path(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges)."""
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with center 0."""
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def complete(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def k33() -> Graph:
    return complete_bipartite(3, 3)


def k4() -> Graph:
    return complete(4)


def prism() -> Graph:
    """Triangular prism: two triangles joined by a perfect matching."""
    return Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def fig1() -> Graph:
    """A 10-vertex tree with a unique perfect matching whose maximum
    2-edge-colorable subgraph drops the edge between its two degree-3
    vertices."""
    return Graph(10, ((0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 7), (5, 8), (8, 9)))


def random_bipartite(n: int, p: float, rng: random.Random, max_edges: int | None = None) -> Graph:
    """Vertices ``0..n-1`` split uniformly into two sides; each cross pair is
    an edge with probability ``p``; then at most ``max_edges`` of them are
    kept, chosen uniformly."""
    side = [rng.random() < 0.5 for _ in range(n)]
    edges = [(u, v) for u, v in combinations(range(n), 2)
             if side[u] != side[v] and rng.random() < p]
    if max_edges is not None and len(edges) > max_edges:
        edges = rng.sample(edges, max_edges)
    return Graph(n, tuple(edges))


def random_forest(n: int, rng: random.Random, p: float = 0.85) -> Graph:
    """Vertex ``i > 0`` attaches to a uniform earlier vertex with probability
    ``p`` and starts a new tree otherwise."""
    edges = [(rng.randrange(i), i) for i in range(1, n) if rng.random() < p]
    return Graph(n, tuple(edges))


def _literals(n: int):
    return [(v, neg) for v in range(1, n + 1) for neg in (False, True)]


def all_two_cnfs(n: int, m: int) -> list[TwoCnf]:
    """Every formula with ``m`` clauses over ``n`` variables in which each
    clause has two distinct variables and each variable occurs at least
    twice; clause lists are taken up to reordering (sorted)."""
    pool = [(a, b) for a, b in combinations(_literals(n), 2) if a[0] != b[0]]
    out = []
    for idx in combinations_with_replacement(range(len(pool)), m):
        cnf = TwoCnf(n, tuple(pool[i] for i in idx))
        if min(cnf.occurrences(), default=0) >= 2:
            out.append(cnf)
    return out


def random_two_cnf(n: int, m: int, rng: random.Random) -> TwoCnf:
    """Uniform clauses on two distinct variables, redrawn until every
    variable occurs at least twice (requires ``2 <= n <= m``)."""
    if not 2 <= n <= m:
        raise InputError("need 2 <= n <= m for every variable to occur twice")
    while True:
        clauses = []
        for _ in range(m):
            a, b = sorted(rng.sample(range(1, n + 1), 2))
            clauses.append(((a, rng.random() < 0.5), (b, rng.random() < 0.5)))
        cnf = TwoCnf(n, tuple(clauses))
        if min(cnf.occurrences()) >= 2:
            return cnf


NAMED = {
    "path": lambda n: path(n),
    "cycle": lambda n: cycle(n),
    "star": lambda n: star(n - 1),
    "k33": lambda n: k33(),
    "k4": lambda n: k4(),
    "prism": lambda n: prism(),
    "petersen": lambda n: petersen(),
    "fig1": lambda n: fig1(),
}

RANDOM = ("random-bipartite", "random-forest")


def generate(kind: str, n: int = 8, p: float = 0.5, seed: int = 0) -> Graph:
    """Dispatch used by the command line; ``n`` counts vertices."""
    if kind in NAMED:
        return NAMED[kind](n)
    rng = random.Random(seed)
    if kind == "random-bipartite":
        return random_bipartite(n, p, rng)
    if kind == "random-forest":
        return random_forest(n, rng, p)
    raise InputError(f"unknown generator {kind!r}")
