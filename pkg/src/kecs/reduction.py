"""Gadget graphs built from 2-CNF formulas, and their certificate mappings.

Vertices are integer lattice points.  For a literal of ``x_i`` in clause
``C_j`` the variable gadget lives in the cell with columns ``4i-3 .. 4i`` and
rows ``4j-3 .. 4j``; its four ``v`` vertices always sit at columns
``4i-1, 4i`` and rows ``4j-1, 4j`` and form the path
``v21 - v22 - v12 - v11``.  The ``v`` paths of all occurrences of ``x_i``
are closed into one cycle of length ``4 r(i)`` by the edges
``v11(j_t) - v21(j_{t+1})`` (indices cyclic).

Two families are produced:

``max2sat``
    8-vertex / 7-edge gadgets, a clause connector ``(0,4j-1), (0,4j)`` joined
    to both gadgets' ``v12``, and a path on column ``-1`` whose vertex
    ``(-1,4j)`` is joined to ``u11`` of the clause's first gadget.
``min2sat-weighted``
    6-vertex / 5-edge gadgets, two "curved" edges per clause between the
    gadget vertices not adjacent to ``u11``/``u12``, and a path on column
    ``0`` whose vertex ``(0,4j)`` is joined to ``u11`` of the first gadget.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import CertificateError, ConstructionError, InputError, ParameterError
from .graph import (
    ColorConstraintMap,
    Edge,
    Graph,
    KEdgeColoring,
    bipartition,
    canon,
    degree_profile,
    is_connected,
    is_matching,
)
from .oracle import DEFAULT_ENUM_BUDGET, MatchingSpectrum, SearchBudget, matching_spectrum, max_matching
from .sat import TruthAssignment, TwoCnf

MAX2SAT = "max2sat"
MAX2SAT_COLORED = "max2sat-colored"
MIN2SAT = "min2sat-weighted"


class Role(NamedTuple):
    #: u11/u12/u21/u22/v11/v12/v21/v22, path, connector-low, connector-top
    tag: str
    #: 1-based clause index; path vertices carry the clause whose rows they span
    clause: int
    #: 1-based variable index, 0 outside gadgets
    variable: int


@dataclass(frozen=True)
class ReductionInstance:
    graph: Graph
    kind: str
    cnf: TwoCnf
    meta: dict
    role_map: dict
    constraints: ColorConstraintMap | None = None
    weights: dict | None = None
    #: edge -> category tag ("gadget", "cyclic", "path", "path-link", ...)
    edge_kinds: dict = field(default_factory=dict)
    #: variable -> {"vertical": edges, "horizontal": edges} of its cycle
    cycles: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.meta["m"]

    @property
    def threshold(self) -> int:
        return self.meta["threshold"]

    def edges_of_kind(self, kind: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.graph.edges if self.edge_kinds[e] == kind)

    def total_weight(self) -> int:
        return sum(self.weights[e] for e in self.graph.edges)


def q_min(m: int) -> int:
    """Smallest ``q`` with ``2**q > 2m``, i.e. ``ceil(log2(2m+1))``."""
    return (2 * m).bit_length()


def _check_cnf(cnf: TwoCnf, K: int) -> None:
    occ = cnf.occurrences()
    rare = [i for i, c in enumerate(occ, 1) if c < 2]
    if rare:
        raise InputError(f"variables occurring fewer than twice: {rare}")
    for j, ((a, _), (b, _)) in enumerate(cnf.clauses, 1):
        if a == b:
            raise InputError(f"clause {j} uses variable {a} twice")
    if not 1 <= K <= cnf.m:
        raise InputError(f"K={K} outside 1..{cnf.m}")


def _sorted_clause(cl):
    return tuple(sorted(cl))


def _gadget_max2sat(i: int, j: int, negated: bool):
    c0, c1, r0 = 4 * i - 1, 4 * i, 4 * j
    pts = {"v21": (c0, r0 - 1), "v22": (c1, r0 - 1), "v11": (c0, r0), "v12": (c1, r0)}
    if not negated:
        pts.update(u11=(c0, r0 - 3), u12=(c0, r0 - 2), u21=(c1, r0 - 3), u22=(c1, r0 - 2))
        edges = [("u11", "u12"), ("u21", "u22"), ("u12", "v21"), ("u22", "v22"),
                 ("v21", "v22"), ("v22", "v12"), ("v11", "v12")]
    else:
        pts.update(u11=(4 * i - 3, r0 - 1), u12=(4 * i - 2, r0 - 1),
                   u21=(4 * i - 3, r0), u22=(4 * i - 2, r0))
        edges = [("u11", "u12"), ("u12", "v21"), ("v21", "v22"), ("v22", "v12"),
                 ("v11", "v12"), ("v11", "u22"), ("u21", "u22")]
    return pts, edges


def _gadget_min2sat(i: int, j: int, negated: bool):
    c0, c1, r0 = 4 * i - 1, 4 * i, 4 * j
    pts = {"v21": (c0, r0 - 1), "v22": (c1, r0 - 1), "v11": (c0, r0), "v12": (c1, r0)}
    if not negated:
        pts.update(u11=(c0, r0 - 2), u12=(c1, r0 - 2))
        edges = [("u11", "v21"), ("u12", "v22"), ("v21", "v22"), ("v22", "v12"), ("v11", "v12")]
    else:
        pts.update(u11=(4 * i - 2, r0 - 1), u12=(4 * i - 2, r0))
        edges = [("u11", "v21"), ("v21", "v22"), ("v22", "v12"), ("v11", "v12"), ("v11", "u12")]
    return pts, edges


class _Builder:
    def __init__(self):
        self.roles: dict[tuple[int, int], Role] = {}
        self.edges: dict[tuple, str] = {}

    def vertex(self, pt, role: Role):
        if pt in self.roles:
            raise ConstructionError(f"lattice point {pt} used twice")
        self.roles[pt] = role

    def edge(self, p, q, kind):
        key = (p, q) if p < q else (q, p)
        if key in self.edges:
            raise ConstructionError(f"edge {key} added twice")
        self.edges[key] = kind

    def finish(self):
        labels = sorted(self.roles)
        ids = {pt: i for i, pt in enumerate(labels)}
        kinds = {canon(ids[p], ids[q]): kind for (p, q), kind in self.edges.items()}
        g = Graph(len(labels), tuple(kinds), tuple(labels))
        role_map = {ids[pt]: self.roles[pt] for pt in labels}
        return g, role_map, kinds, ids


def _add_cycles(b: _Builder, cnf: TwoCnf, pts_of):
    """Close the ``v`` paths of each variable into a cycle; return cycle edges."""
    occ: dict[int, list[int]] = {}
    for j, cl in enumerate(cnf.clauses, 1):
        for var, _ in cl:
            occ.setdefault(var, []).append(j)
    cycles = {}
    for i in range(1, cnf.num_vars + 1):
        js = occ[i]
        vertical, horizontal = [], []
        for t, j in enumerate(js):
            nxt = js[(t + 1) % len(js)]
            p = pts_of[(i, j)]
            b.edge(p["v11"], pts_of[(i, nxt)]["v21"], "cyclic")
            vertical.append((p["v11"], pts_of[(i, nxt)]["v21"]))
            vertical.append((p["v22"], p["v12"]))
            horizontal.append((p["v21"], p["v22"]))
            horizontal.append((p["v12"], p["v11"]))
        cycles[i] = {"vertical": vertical, "horizontal": horizontal}
    return cycles


def _relabel_cycles(cycles, ids):
    return {i: {d: tuple(sorted(canon(ids[p], ids[q]) for p, q in es)) for d, es in c.items()}
            for i, c in cycles.items()}


def build_max2sat_instance(cnf: TwoCnf, K: int) -> ReductionInstance:
    _check_cnf(cnf, K)
    m = cnf.m
    b = _Builder()
    pts_of = {}
    first_u11 = {}
    for j, cl in enumerate(cnf.clauses, 1):
        v12s = []
        for pos, (i, neg) in enumerate(_sorted_clause(cl)):
            pts, edges = _gadget_max2sat(i, j, neg)
            for tag, pt in pts.items():
                b.vertex(pt, Role(tag, j, i))
            for p, q in edges:
                b.edge(pts[p], pts[q], "gadget")
            pts_of[(i, j)] = pts
            v12s.append(pts["v12"])
            if pos == 0:
                first_u11[j] = pts["u11"]
        low, top = (0, 4 * j - 1), (0, 4 * j)
        b.vertex(low, Role("connector-low", j, 0))
        b.vertex(top, Role("connector-top", j, 0))
        b.edge(low, top, "connector")
        for v12 in v12s:
            b.edge(low, v12, "connector")
    cycles = _add_cycles(b, cnf, pts_of)
    for y in range(1, 4 * m + 1):
        b.vertex((-1, y), Role("path", (y + 3) // 4, 0))
        if y > 1:
            b.edge((-1, y - 1), (-1, y), "path")
    for j in range(1, m + 1):
        b.edge((-1, 4 * j), first_u11[j], "path-link")
    g, role_map, kinds, ids = b.finish()
    meta = {"m": m, "n": cnf.num_vars, "K": K, "threshold": 7 * m + K - 1}
    inst = ReductionInstance(g, MAX2SAT, cnf, meta, role_map, edge_kinds=kinds,
                             cycles=_relabel_cycles(cycles, ids))
    _check_invariants(inst)
    return inst


def annotate_color_constraints(inst: ReductionInstance) -> ReductionInstance:
    """Attach ``W(z) = {1}`` to the pendant vertices of every clause graph and
    to ``(-1, 1)``; every other vertex gets ``{1, 2}``.

    A clause-graph vertex counts as pendant when it has degree one in the
    finished graph: the gadget ends ``u21``, the ``u11`` not linked to the
    connecting path, and the connector top ``(0, 4j)``.  Pendant vertices are
    always covered by a perfect matching, so color 1 there is never a loss.
    """
    if inst.kind != MAX2SAT:
        raise InputError(f"expected a {MAX2SAT} instance, got {inst.kind}")
    g = inst.graph
    one, both = frozenset({1}), frozenset({1, 2})
    start = g.vertex_of_label(-1, 1)
    constraints = {}
    for v in range(g.vertex_count):
        clause_vertex = inst.role_map[v].tag != "path"
        constraints[v] = one if (clause_vertex and g.degree(v) == 1) or v == start else both
    meta = dict(inst.meta)
    meta["threshold"] = 11 * inst.m + inst.meta["threshold"]
    meta["base_threshold"] = inst.meta["threshold"]
    return ReductionInstance(g, MAX2SAT_COLORED, inst.cnf, meta, inst.role_map,
                             constraints=constraints, edge_kinds=inst.edge_kinds,
                             cycles=inst.cycles)


def build_min2sat_instance(cnf: TwoCnf, K: int, q: int | None = None) -> ReductionInstance:
    _check_cnf(cnf, K)
    m = cnf.m
    if q is None:
        q = 16 * m
    if q < q_min(m):
        raise ParameterError(f"q={q} is below q_min={q_min(m)} for m={m}")
    b = _Builder()
    pts_of = {}
    first_u11 = {}
    heavy_pairs = []
    for j, cl in enumerate(cnf.clauses, 1):
        gadgets = []
        for pos, (i, neg) in enumerate(_sorted_clause(cl)):
            pts, edges = _gadget_min2sat(i, j, neg)
            for tag, pt in pts.items():
                b.vertex(pt, Role(tag, j, i))
            for p, qq in edges:
                b.edge(pts[p], pts[qq], "gadget")
            pts_of[(i, j)] = pts
            # the endpoints not adjacent to u11/u12: odd-parity one first
            free = ("v22", "v12") if neg else ("v11", "v12")
            gadgets.append((pts[free[0]], pts[free[1]]))
            if pos == 0:
                first_u11[j] = pts["u11"]
        (odd1, even1), (odd2, even2) = gadgets
        b.edge(odd1, even2, "curved")
        b.edge(even1, odd2, "curved")
        heavy_pairs.extend(gadgets)
    cycles = _add_cycles(b, cnf, pts_of)
    for y in range(1, 4 * m + 1):
        b.vertex((0, y), Role("path", (y + 3) // 4, 0))
        if y > 1:
            b.edge((0, y - 1), (0, y), "path")
    for j in range(1, m + 1):
        b.edge((0, 4 * j), first_u11[j], "path-link")
    g, role_map, kinds, ids = b.finish()
    heavy = {canon(ids[p], ids[qq]) for p, qq in heavy_pairs}
    for e in heavy:
        kinds[e] = "gadget-heavy"

    two_q = 1 << q
    weights = {}
    for e in g.edges:
        kind = kinds[e]
        tags = {role_map[e[0]].tag, role_map[e[1]].tag}
        if kind in ("path", "path-link"):
            weights[e] = 1
        elif kind == "cyclic":
            weights[e] = two_q
        elif kind == "curved":
            weights[e] = two_q + 1
        elif tags & {"u11", "u12"}:
            weights[e] = 4 ** q
        elif kind == "gadget-heavy":
            weights[e] = two_q + 2
        else:
            weights[e] = two_q
    meta = {"m": m, "n": cnf.num_vars, "K": K, "q": q,
            "threshold": m * ((1 << (q + 2)) + 1) + 2 * K}
    inst = ReductionInstance(g, MIN2SAT, cnf, meta, role_map, weights=weights,
                             edge_kinds=kinds, cycles=_relabel_cycles(cycles, ids))
    _check_invariants(inst)
    return inst


def _check_invariants(inst: ReductionInstance) -> None:
    g, m = inst.graph, inst.m
    per_kind = Counter(inst.edge_kinds.values())
    if inst.kind == MAX2SAT:
        want_v, want_e, max_deg = 22 * m, 24 * m - 1, 3
        ledger = {"gadget": 14 * m, "connector": 3 * m, "cyclic": 2 * m,
                  "path": 4 * m - 1, "path-link": m}
    else:
        want_v, want_e, max_deg = 16 * m, 19 * m - 1, 3
        ledger = {"gadget": 8 * m, "gadget-heavy": 2 * m, "curved": 2 * m, "cyclic": 2 * m,
                  "path": 4 * m - 1, "path-link": m}

    def fail(msg):
        raise ConstructionError(f"{inst.kind} instance (m={m}): {msg}")

    if g.vertex_count != want_v:
        fail(f"|V|={g.vertex_count}, expected {want_v}")
    if len(g.edges) != want_e:
        fail(f"|E|={len(g.edges)}, expected {want_e}")
    if dict(per_kind) != ledger:
        fail(f"edge ledger {dict(per_kind)} != {ledger}")
    if bipartition(g) is None:
        fail("not bipartite")
    if inst.kind == MIN2SAT:
        for u, v in g.edges:
            if sum(g.labels[u]) % 2 == sum(g.labels[v]) % 2:
                fail(f"edge {(u, v)} does not cross the parity classes")
    if not is_connected(g):
        fail("not connected")
    _, hi, _ = degree_profile(g)
    if (inst.kind == MAX2SAT and hi != max_deg) or hi > max_deg:
        fail(f"maximum degree {hi}")
    nu = len(max_matching(g))
    if nu != want_v // 2:
        fail(f"nu={nu}, expected {want_v // 2}")


# ---------------------------------------------------------------------------
# deletion sets for the weighted family


@dataclass(frozen=True)
class DeletionSet:
    """Edges whose removal leaves every vertex with degree at most 2."""

    edges: frozenset
    weight: int


def make_deletion_set(inst: ReductionInstance, edges) -> DeletionSet:
    g = inst.graph
    e0 = frozenset(canon(*e) for e in edges)
    if not e0 <= g.edge_set:
        raise CertificateError(f"edges not in graph: {sorted(e0 - g.edge_set)}")
    deg = Counter()
    for u, v in g.edges:
        if (u, v) not in e0:
            deg[u] += 1
            deg[v] += 1
    over = sorted(v for v, d in deg.items() if d > 2)
    if over:
        raise CertificateError(f"vertices of degree > 2 after deletion: {over}")
    w = inst.weights
    return DeletionSet(e0, sum(w[e] for e in e0) if w else len(e0))


def _require_min2sat(inst):
    if inst.kind != MIN2SAT:
        raise InputError(f"expected a {MIN2SAT} instance, got {inst.kind}")


def assignment_to_deletion_set(inst: ReductionInstance, a: TruthAssignment) -> DeletionSet:
    """All path-to-gadget links, plus per variable the vertical edges of its
    cycle when false and the horizontal ones when true."""
    _require_min2sat(inst)
    if len(a) != inst.cnf.num_vars:
        raise InputError(f"assignment has length {len(a)}, expected {inst.cnf.num_vars}")
    edges = set(inst.edges_of_kind("path-link"))
    for i, val in enumerate(a, 1):
        edges.update(inst.cycles[i]["horizontal" if val else "vertical"])
    return make_deletion_set(inst, edges)


def high_degree_gadget_vertices(inst: ReductionInstance) -> list[int]:
    """Degree-3 vertices that are not on the connecting path."""
    g = inst.graph
    return [v for v in range(g.vertex_count)
            if g.degree(v) == 3 and inst.role_map[v].tag != "path"]


def deletion_set_to_assignment(inst: ReductionInstance, e0: DeletionSet) -> TruthAssignment:
    """Read a truth assignment off a matching deletion set.

    Variable ``i`` is false if ``e0`` takes every vertical edge of its cycle
    and true if it takes every horizontal one; anything else is rejected.
    """
    _require_min2sat(inst)
    g = inst.graph
    if not is_matching(g, e0.edges):
        raise CertificateError("deletion set is not a matching")
    covered = {v for e in e0.edges for v in e}
    missing = [v for v in high_degree_gadget_vertices(inst) if v not in covered]
    if missing:
        raise CertificateError(f"degree-3 gadget vertices not covered: {missing}")
    beta = []
    for i in range(1, inst.cnf.num_vars + 1):
        vert = set(inst.cycles[i]["vertical"])
        hor = set(inst.cycles[i]["horizontal"])
        if vert <= e0.edges and not hor & e0.edges:
            beta.append(False)
        elif hor <= e0.edges and not vert & e0.edges:
            beta.append(True)
        else:
            raise CertificateError(
                f"variable {i}: deletion set mixes vertical and horizontal cycle edges", variable=i)
    return tuple(beta)


def predicted_deletion_weight(m: int, q: int, satisfied: int) -> int:
    """``m + 2**(q+2) * m + 2 * satisfied``."""
    return m + (1 << (q + 2)) * m + 2 * satisfied


def true_literal_occurrences(cnf: TwoCnf, a: TruthAssignment) -> int:
    return sum(1 for cl in cnf.clauses for var, neg in cl if a[var - 1] != neg)


def lemma2_lower_bound_witness(
    inst: ReductionInstance,
    budget: SearchBudget = DEFAULT_ENUM_BUDGET,
    spectrum: MatchingSpectrum | None = None,
) -> KEdgeColoring:
    """Constrained 2-edge-coloring with ``nu(G) + L(G)`` colored edges.

    Color 1 is a perfect matching ``F`` attaining ``L``; color 2 is a maximum
    matching of ``G - F``.  Pass a precomputed ``spectrum`` to skip the
    enumeration.
    """
    if inst.kind != MAX2SAT_COLORED:
        raise InputError(f"expected a {MAX2SAT_COLORED} instance, got {inst.kind}")
    if spectrum is None:
        spectrum = matching_spectrum(inst.graph, budget)
    assignment = {e: 1 for e in spectrum.big_l_witness}
    assignment.update({e: 2 for e in spectrum.big_l_residual})
    return KEdgeColoring(2, assignment)
