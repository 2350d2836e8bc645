"""Simple undirected graphs, matchings and partial edge colorings.

Edges are canonical pairs ``(u, v)`` with ``u < v``; every collection of
edges produced here is sorted in that canonical order so downstream results
are deterministic.  Color ``0`` (uncolored) is never stored: a coloring only
maps the edges that belong to the colored subgraph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import InputError

Edge = tuple[int, int]
#: edge -> positive integer weight (arbitrary precision)
WeightMap = Mapping[Edge, int]
#: vertex -> admissible colors; vertices not present admit every color
ColorConstraintMap = Mapping[int, frozenset]


def canon(u: int, v: int) -> Edge:
    if u == v:
        raise InputError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0 .. vertex_count-1``.

    ``labels`` optionally attaches an integer lattice point to each vertex;
    when given it must cover every vertex and be injective.
    """

    vertex_count: int
    edges: tuple[Edge, ...] = ()
    labels: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise InputError("vertex_count must be nonnegative")
        seen = set()
        for e in self.edges:
            u, v = canon(*e)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {e} has an endpoint outside [0, {n})")
            seen.add((u, v))
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        if self.labels is not None:
            labels = tuple((int(x), int(y)) for x, y in self.labels)
            if len(labels) != n:
                raise InputError("labels must cover every vertex")
            if len(set(labels)) != n:
                raise InputError("labels must be injective")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], labels=None) -> "Graph":
        return cls(n, tuple(edges), labels)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def incident(self) -> tuple[tuple[Edge, ...], ...]:
        inc: list[list[Edge]] = [[] for _ in range(self.vertex_count)]
        for e in self.edges:
            inc[e[0]].append(e)
            inc[e[1]].append(e)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return canon(u, v) in self.edge_set

    def __len__(self) -> int:
        return self.vertex_count

    def vertex_of_label(self, x: int, y: int) -> int:
        if self.labels is None:
            raise InputError("graph has no labels")
        try:
            return self._label_index[(x, y)]
        except KeyError:
            raise InputError(f"no vertex labelled {(x, y)}") from None

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels or ())}


@dataclass(frozen=True)
class Bipartition:
    side_a: frozenset
    side_b: frozenset

    def is_valid_for(self, g: Graph) -> bool:
        if self.side_a & self.side_b:
            return False
        if (self.side_a | self.side_b) != frozenset(range(g.vertex_count)):
            return False
        return all((u in self.side_a) != (v in self.side_a) for u, v in g.edges)


@dataclass(frozen=True)
class KEdgeColoring:
    """Partial proper-or-not edge coloring with colors ``1..k``.

    Properness is *not* enforced here; use :func:`validate_coloring`.
    """

    k: int
    assignment: Mapping[Edge, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 0:
            raise InputError("k must be nonnegative")
        clean = {}
        for e, c in self.assignment.items():
            c = int(c)
            if c == 0:
                continue
            if not 1 <= c <= self.k:
                raise InputError(f"color {c} on edge {e} outside 1..{self.k}")
            clean[canon(*e)] = c
        object.__setattr__(self, "assignment", dict(sorted(clean.items())))

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self.assignment)

    def __len__(self) -> int:
        return len(self.assignment)

    def color_of(self, e: Edge) -> int:
        return self.assignment.get(canon(*e), 0)

    def color_classes(self) -> dict[int, tuple[Edge, ...]]:
        classes: dict[int, list[Edge]] = {c: [] for c in range(1, self.k + 1)}
        for e, c in self.assignment.items():
            classes[c].append(e)
        return {c: tuple(es) for c, es in classes.items()}

    def weight(self, w: WeightMap | None = None) -> int:
        if w is None:
            return len(self.assignment)
        return sum(w[e] for e in self.assignment)


class Violation(NamedTuple):
    """One defect found by :func:`validate_coloring`.

    ``kind`` is ``"proper"`` (``count`` edges of ``color`` meet at ``vertex``)
    or ``"constraint"`` (``color`` is not admissible at ``vertex``).
    """

    kind: str
    vertex: int
    color: int
    count: int = 1


def admissible(wc: ColorConstraintMap | None, v: int, k: int) -> frozenset:
    full = frozenset(range(1, k + 1))
    if wc is None or v not in wc:
        return full
    return frozenset(wc[v]) & full


def full_constraints(g: Graph, k: int) -> dict[int, frozenset]:
    full = frozenset(range(1, k + 1))
    return {v: full for v in range(g.vertex_count)}


def is_matching(g: Graph, edges: Iterable[Edge]) -> bool:
    seen = set()
    for e in edges:
        u, v = canon(*e)
        if (u, v) not in g.edge_set or u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def validate_coloring(
    g: Graph, c: KEdgeColoring, w: ColorConstraintMap | None = None
) -> list[Violation]:
    """Return every properness and constraint violation of ``c`` in ``g``.

    An empty list means ``c`` is a proper coloring respecting ``w``.
    Raises :class:`InputError` if ``c`` colors an edge that ``g`` lacks.
    """
    counts: dict[tuple[int, int], int] = {}
    for e, col in c.assignment.items():
        if e not in g.edge_set:
            raise InputError(f"coloring references unknown edge {e}")
        for v in e:
            counts[(v, col)] = counts.get((v, col), 0) + 1
    report = []
    for (v, col), cnt in sorted(counts.items()):
        if cnt > 1:
            report.append(Violation("proper", v, col, cnt))
        if w is not None and col not in admissible(w, v, c.k):
            report.append(Violation("constraint", v, col))
    return report


def delete_edges(g: Graph, f: Iterable[Edge]) -> Graph:
    drop = {canon(*e) for e in f}
    missing = drop - g.edge_set
    if missing:
        raise InputError(f"edges not in graph: {sorted(missing)}")
    return Graph(g.vertex_count, tuple(e for e in g.edges if e not in drop), g.labels)


def subgraph(g: Graph, keep: Iterable[Edge]) -> Graph:
    """Spanning subgraph with edge set ``keep`` (which must lie in ``g``)."""
    keep = {canon(*e) for e in keep}
    if not keep <= g.edge_set:
        raise InputError(f"edges not in graph: {sorted(keep - g.edge_set)}")
    return Graph(g.vertex_count, tuple(sorted(keep)), g.labels)


def degree_profile(g: Graph) -> tuple[tuple[int, ...], int, int]:
    """``(degrees, max degree, min degree)``; both extremes are 0 when empty."""
    degs = tuple(len(a) for a in g.adjacency)
    if not degs:
        return degs, 0, 0
    return degs, max(degs), min(degs)


def bipartition(g: Graph) -> Bipartition | None:
    """Two-color ``g`` by BFS, or return ``None`` if it has an odd cycle.

    The lowest-id vertex of every component lands in ``side_a``.
    """
    side = [-1] * g.vertex_count
    for root in range(g.vertex_count):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if side[v] == -1:
                    side[v] = 1 - side[u]
                    queue.append(v)
                elif side[v] == side[u]:
                    return None
    a = frozenset(v for v in range(g.vertex_count) if side[v] == 0)
    b = frozenset(v for v in range(g.vertex_count) if side[v] == 1)
    return Bipartition(a, b)


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.vertex_count
    comps = []
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        comp, stack = [], [root]
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1
