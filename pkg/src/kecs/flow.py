"""Polynomial solvers for bipartite graphs.

``nu_k`` of a bipartite graph equals the maximum flow of the network

    source --k--> a  --1--> b --k--> sink      (a in A, b in B, ab an edge)

and any integral maximum flow picks a subgraph of maximum degree ``k``,
which König's theorem colors with ``k`` colors.  The weighted variant
(maximum-weight subgraph of maximum degree ``k``) is solved by successive
longest augmenting paths over exact integers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InputError, PreconditionError
from .graph import Bipartition, Edge, Graph, KEdgeColoring, WeightMap, bipartition, degree_profile

SOURCE = "source"
SINK = "sink"


class Arc(NamedTuple):
    tail: object
    head: object
    capacity: int
    #: "source", "edge" or "sink"
    kind: str
    edge: Edge | None = None


@dataclass(frozen=True)
class FlowNetwork:
    """Nodes are ``SOURCE``, ``SINK`` and the vertex ids of the graph."""

    nodes: tuple
    arcs: tuple[Arc, ...]
    k: int


class FlowResult(NamedTuple):
    value: int
    flows: tuple[int, ...]
    #: nodes reachable from the source in the final residual network
    source_side: frozenset

    def cut_capacity(self, net: FlowNetwork) -> int:
        return sum(a.capacity for a in net.arcs
                   if a.tail in self.source_side and a.head not in self.source_side)


def _require_bipartition(g: Graph, bip: Bipartition | None) -> Bipartition:
    if bip is None:
        bip = bipartition(g)
        if bip is None:
            raise InputError("graph is not bipartite; use kecs.oracle.brute_nuk instead")
    elif not bip.is_valid_for(g):
        raise InputError("invalid bipartition for this graph")
    return bip


def build_network(g: Graph, bip: Bipartition, k: int) -> FlowNetwork:
    if k < 1:
        raise InputError("k must be at least 1")
    bip = _require_bipartition(g, bip)
    a_side, b_side = sorted(bip.side_a), sorted(bip.side_b)
    arcs = [Arc(SOURCE, a, k, "source") for a in a_side]
    for u, v in g.edges:
        a, b = (u, v) if u in bip.side_a else (v, u)
        arcs.append(Arc(a, b, 1, "edge", (u, v)))
    arcs.extend(Arc(b, SINK, k, "sink") for b in b_side)
    return FlowNetwork((SOURCE, *a_side, *b_side, SINK), tuple(arcs), k)


def max_flow_integral(net: FlowNetwork) -> FlowResult:
    """Dinic's algorithm; all capacities are integers so the flow is integral."""
    index = {node: i for i, node in enumerate(net.nodes)}
    s, t = index[SOURCE], index[SINK]
    # residual arcs stored pairwise: 2*i forward, 2*i+1 backward
    head, cap = [], []
    adj: list[list[int]] = [[] for _ in net.nodes]
    for arc in net.arcs:
        u, v = index[arc.tail], index[arc.head]
        adj[u].append(len(head)); head.append(v); cap.append(arc.capacity)
        adj[v].append(len(head)); head.append(u); cap.append(0)

    def bfs_levels():
        level = [-1] * len(net.nodes)
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for r in adj[u]:
                if cap[r] > 0 and level[head[r]] < 0:
                    level[head[r]] = level[u] + 1
                    queue.append(head[r])
        return level

    value = 0
    while True:
        level = bfs_levels()
        if level[t] < 0:
            break
        it = [0] * len(net.nodes)

        def push(u, limit):
            if u == t:
                return limit
            while it[u] < len(adj[u]):
                r = adj[u][it[u]]
                v = head[r]
                if cap[r] > 0 and level[v] == level[u] + 1:
                    got = push(v, min(limit, cap[r]))
                    if got:
                        cap[r] -= got
                        cap[r ^ 1] += got
                        return got
                it[u] += 1
            return 0

        while True:
            got = push(s, float("inf"))
            if not got:
                break
            value += got
    level = bfs_levels()
    reach = frozenset(net.nodes[i] for i, lv in enumerate(level) if lv >= 0)
    flows = tuple(cap[2 * i + 1] for i in range(len(net.arcs)))
    return FlowResult(value, flows, reach)


def konig_edge_color(g: Graph, bip: Bipartition | None, k: int) -> KEdgeColoring:
    """Color every edge of a bipartite graph with ``Δ(g) <= k`` colors.

    Each edge ``uv`` takes a color free at both ends if one exists; otherwise
    with ``a`` free at ``u`` and ``b`` free at ``v`` the ``a/b`` alternating
    path starting at ``v`` is swapped, which frees ``a`` at ``v``.
    """
    bip = _require_bipartition(g, bip)
    _, max_deg, _ = degree_profile(g)
    if max_deg > k:
        raise PreconditionError(f"maximum degree {max_deg} exceeds k={k}")
    # at[v][c] = neighbour joined to v by the edge of color c
    at: list[dict[int, int]] = [{} for _ in range(g.vertex_count)]
    colors = range(1, k + 1)
    for u, v in g.edges:
        a = next(c for c in colors if c not in at[u])
        if a not in at[v]:
            at[u][a] = v
            at[v][a] = u
            continue
        b = next(c for c in colors if c not in at[v])
        # walk v -a- x -b- y -a- ... ; the path never reaches u in a bipartite graph
        path = [v]
        c, x = a, v
        while c in at[x]:
            x = at[x][c]
            path.append(x)
            c = b if c == a else a
        c = a
        for p, q in zip(path, path[1:]):
            del at[p][c]
            del at[q][c]
            c = b if c == a else a
        c = b
        for p, q in zip(path, path[1:]):
            at[p][c] = q
            at[q][c] = p
            c = b if c == a else a
        at[u][a] = v
        at[v][a] = u
    assignment = {}
    for v in range(g.vertex_count):
        for c, x in at[v].items():
            if v < x:
                assignment[(v, x)] = c
    return KEdgeColoring(k, assignment)


def solve_nuk_bipartite(g: Graph, k: int) -> KEdgeColoring:
    """Maximum ``k``-edge-colorable subgraph of a bipartite graph, colored."""
    bip = _require_bipartition(g, None)
    if k < 1:
        return KEdgeColoring(max(k, 0), {})
    net = build_network(g, bip, k)
    res = max_flow_integral(net)
    chosen = [a.edge for a, f in zip(net.arcs, res.flows) if a.kind == "edge" and f == 1]
    sub = Graph(g.vertex_count, tuple(chosen))
    return konig_edge_color(sub, bip, k)


def solve_weighted_degree_constrained(
    g: Graph, bip: Bipartition | None, k: int, w: WeightMap
) -> frozenset:
    """Maximum-weight edge set whose every vertex degree is at most ``k``.

    Among maximum-weight sets the lexicographically smallest one (as a sorted
    tuple of canonical edges) is returned: weights are lifted to
    ``w(e) * 2**E + 2**(E-1-rank(e))``, which keeps the order of true weights
    and breaks every tie toward earlier edges.
    """
    bip = _require_bipartition(g, bip)
    if k < 1 or not g.edges:
        return frozenset()
    m = len(g.edges)
    for e in g.edges:
        if w[e] < 1:
            raise InputError(f"weight of {e} must be positive")
    lifted = {e: (w[e] << m) + (1 << (m - 1 - r)) for r, e in enumerate(g.edges)}

    net = build_network(g, bip, k)
    index = {node: i for i, node in enumerate(net.nodes)}
    s, t = index[SOURCE], index[SINK]
    head, cap, gain, edge_of = [], [], [], []
    adj: list[list[int]] = [[] for _ in net.nodes]
    for arc in net.arcs:
        u, v = index[arc.tail], index[arc.head]
        g_ = lifted[arc.edge] if arc.kind == "edge" else 0
        adj[u].append(len(head)); head.append(v); cap.append(arc.capacity); gain.append(g_)
        edge_of.append(arc.edge)
        adj[v].append(len(head)); head.append(u); cap.append(0); gain.append(-g_)
        edge_of.append(arc.edge)

    nn = len(net.nodes)
    while True:
        # longest s-t path in the residual graph (Bellman-Ford; no positive cycles
        # exist because every augmentation is along a longest path)
        best = [None] * nn
        pred = [-1] * nn
        best[s] = 0
        for _ in range(nn - 1):
            changed = False
            for u in range(nn):
                bu = best[u]
                if bu is None:
                    continue
                for r in adj[u]:
                    if cap[r] > 0:
                        v = head[r]
                        cand = bu + gain[r]
                        if best[v] is None or cand > best[v]:
                            best[v] = cand
                            pred[v] = r
                            changed = True
            if not changed:
                break
        if best[t] is None or best[t] <= 0:
            break
        v = t
        while v != s:
            r = pred[v]
            cap[r] -= 1
            cap[r ^ 1] += 1
            v = head[r ^ 1]
    return frozenset(edge_of[2 * i] for i, a in enumerate(net.arcs)
                     if a.kind == "edge" and cap[2 * i] == 0)
