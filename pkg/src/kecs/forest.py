"""Maximum-weight k-edge-colorable subgraphs of forests under color constraints.

Every tree is rooted at its lowest vertex.  For a vertex ``v`` and the color
``pc`` of the edge to its parent (``0`` = that edge is not colored), the best
value of the subtree is obtained by distributing distinct colors of
``W(v) - {pc}`` over the child edges; a table indexed by the subset of colors
already handed out makes that a ``2**k``-state sweep over the children.

Ties are resolved inside the objective itself: a colored edge of rank ``r``
with color ``c`` contributes::

    (w(e) * 2**E + 2**(E-1-r)) * (k+1)**E  -  c * (k+1)**(E-1-r)

so the unique maximiser has maximum true weight, then the lexicographically
smallest colored edge set, then the smallest color vector.
"""

from __future__ import annotations

from .errors import InputError
from .graph import ColorConstraintMap, Graph, KEdgeColoring, WeightMap, admissible, components


def is_forest(g: Graph) -> bool:
    return len(g.edges) == g.vertex_count - len(components(g))


def solve_forest(
    g: Graph, k: int, w: WeightMap | None = None, wc: ColorConstraintMap | None = None
) -> KEdgeColoring:
    """Largest-weight ``k``-edge-colorable subgraph of the forest ``g``.

    Around every vertex ``v`` only colors from ``wc[v]`` may appear (missing
    entries admit all colors); uncolored edges are unconstrained.  Weights
    default to 1.  Raises :class:`InputError` if ``g`` has a cycle.
    """
    return _solve(g, k, w, wc)[0]


def _solve(g: Graph, k: int, w, wc) -> tuple[KEdgeColoring, int]:
    """Solve and also return the number of DP transitions performed."""
    if not is_forest(g):
        raise InputError("graph contains a cycle")
    if k <= 0 or not g.edges:
        return KEdgeColoring(max(k, 0), {}), 0
    E = len(g.edges)
    rank = {e: r for r, e in enumerate(g.edges)}
    base = (k + 1) ** E

    def lifted(e, c):
        r = rank[e]
        return ((w[e] if w is not None else 1) << E | 1 << (E - 1 - r)) * base \
            - c * (k + 1) ** (E - 1 - r)

    avail = [sum(1 << (c - 1) for c in admissible(wc, v, k)) for v in range(g.vertex_count)]
    full = (1 << k) - 1
    steps = 0

    # parent pointers and a post-order per component
    parent = [-1] * g.vertex_count
    order = []
    seen = [False] * g.vertex_count
    for comp in components(g):
        root = comp[0]
        seen[root] = True
        stack = [root]
        while stack:
            u = stack.pop()
            order.append(u)
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    stack.append(v)
    children: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for v in order:
        if parent[v] >= 0:
            children[parent[v]].append(v)

    # best[v][pc]: optimum of the subtree of v given parent-edge color pc
    best: list[dict[int, int]] = [{} for _ in range(g.vertex_count)]
    # stages[v][i][mask] = (value, color given to child i) after i+1 children
    stages: list[list[list]] = [[] for _ in range(g.vertex_count)]
    masks_of = [[m for m in range(full + 1) if m & ~avail[v] == 0] for v in range(g.vertex_count)]

    for v in reversed(order):
        table = {0: 0}
        for c in children[v]:
            e = (v, c) if v < c else (c, v)
            usable = avail[v] & avail[c]
            skip = best[c][0]
            new = {}
            for mask in masks_of[v]:
                cand = None
                if mask in table:
                    cand = (table[mask] + skip, 0)
                    steps += 1
                m, col = mask & usable, 1
                while m:
                    if m & 1:
                        bit = 1 << (col - 1)
                        prev = table.get(mask ^ bit)
                        steps += 1
                        if prev is not None:
                            val = prev + lifted(e, col) + best[c][col]
                            if cand is None or val > cand[0]:
                                cand = (val, col)
                    m >>= 1
                    col += 1
                if cand is not None:
                    new[mask] = cand
            stages[v].append(new)
            table = {mask: val for mask, (val, _) in new.items()}
        for pc in [0] + [c for c in range(1, k + 1) if avail[v] >> (c - 1) & 1]:
            forbid = 0 if pc == 0 else 1 << (pc - 1)
            best[v][pc] = max(val for mask, val in table.items() if not mask & forbid)
            steps += len(table)

    assignment = {}

    def pick(v, pc):
        forbid = 0 if pc == 0 else 1 << (pc - 1)
        final = stages[v][-1] if stages[v] else {0: (0, 0)}
        mask = max((m for m in final if not m & forbid), key=lambda m: final[m][0])
        for i in range(len(children[v]) - 1, -1, -1):
            c = children[v][i]
            col = stages[v][i][mask][1]
            if col:
                assignment[(v, c) if v < c else (c, v)] = col
                mask ^= 1 << (col - 1)
            todo.append((c, col))

    todo = [(comp[0], 0) for comp in components(g)]
    while todo:
        pick(*todo.pop())
    return KEdgeColoring(k, assignment), steps
