"""Exponential-time exact reference solvers.

These are the independent oracles the polynomial solvers and the reduction
experiments are checked against:

* :func:`brute_nuk` -- branch and bound over per-edge colors ``{0, 1..k}``
  for the weighted, color-constrained ``nu_k`` on arbitrary graphs;
* :func:`max_matching` -- augmenting paths (bipartite) or bounded search;
* :func:`enumerate_maximum_matchings` and :func:`matching_spectrum` for
  ``ell(G)`` / ``L(G)``;
* :func:`cubic_three_colorability`.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import BudgetError, InputError
from .graph import (
    ColorConstraintMap,
    Edge,
    Graph,
    KEdgeColoring,
    WeightMap,
    admissible,
    bipartition,
    delete_edges,
    degree_profile,
)


@dataclass(frozen=True)
class SearchBudget:
    max_edges: int = 40
    max_nodes_expanded: int = 50_000_000
    #: seconds
    time_limit: float = 600.0

    def __post_init__(self):
        if self.max_edges <= 0 or self.max_nodes_expanded <= 0 or self.time_limit <= 0:
            raise InputError("budget fields must be positive")


DEFAULT_BUDGET = SearchBudget()
DEFAULT_ENUM_BUDGET = SearchBudget(max_edges=60)


class _Clock:
    def __init__(self, budget: SearchBudget, what: str):
        self.budget = budget
        self.what = what
        self.nodes = 0
        self.deadline = time.monotonic() + budget.time_limit

    def tick(self, lower_bound=None, witness=None):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes_expanded:
            raise BudgetError(f"{self.what}: node budget exhausted", lower_bound, witness)
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise BudgetError(f"{self.what}: time limit exceeded", lower_bound, witness)


# ---------------------------------------------------------------------------
# branch and bound for nu_k


def _search_order(g: Graph) -> list[Edge]:
    """Edge order that keeps the set of half-processed vertices small.

    Vertices are placed greedily (most already-placed neighbours first, then
    fewest unplaced neighbours, then lowest id); an edge is decided when its
    later endpoint is placed.
    """
    n = g.vertex_count
    placed = [False] * n
    pos = [0] * n
    placed_nb = [0] * n
    for step in range(n):
        best = None
        for v in range(n):
            if placed[v]:
                continue
            key = (-placed_nb[v], g.degree(v) - placed_nb[v], v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        placed[v] = True
        pos[v] = step
        for u in g.adjacency[v]:
            placed_nb[u] += 1
    return sorted(g.edges, key=lambda e: (max(pos[e[0]], pos[e[1]]), min(pos[e[0]], pos[e[1]])))


def _color_permutations(avail: list[int], k: int) -> list[tuple[int, ...]]:
    """Permutations of ``1..k`` that preserve every admissible set."""
    sig = {}
    for c in range(1, k + 1):
        key = tuple(a >> (c - 1) & 1 for a in avail)
        sig.setdefault(key, []).append(c)
    classes = list(sig.values())
    perms = []
    for choice in itertools.product(*(itertools.permutations(cl) for cl in classes)):
        p = [0] * (k + 1)
        for cl, img in zip(classes, choice):
            for a, b in zip(cl, img):
                p[a] = b
        perms.append(tuple(p))
    return perms


def brute_nuk(
    g: Graph,
    k: int,
    w: WeightMap | None = None,
    wc: ColorConstraintMap | None = None,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> tuple[int, KEdgeColoring]:
    """Exact maximum weight of a ``k``-edge-colorable subgraph respecting ``wc``.

    Depth-first assignment of a color in ``{0, 1..k}`` to each edge with
    properness/constraint pruning, an admissible bound on the remaining
    weight, and a table of solved sub-states (the colors already used at
    vertices that still have undecided edges, up to admissible color
    symmetry).  The witness is the first optimal coloring in the search order
    (colors tried ascending, uncolored last).

    Raises :class:`BudgetError` (carrying the best coloring found, *not*
    claimed optimal) when the budget is exceeded.
    """
    wt = {e: (1 if w is None else w[e]) for e in g.edges}
    if any(x < 1 for x in wt.values()):
        raise InputError("weights must be positive")
    if k <= 0 or not g.edges:
        return 0, KEdgeColoring(max(k, 0), {})
    avail = [sum(1 << (c - 1) for c in admissible(wc, v, k)) for v in range(g.vertex_count)]
    order = _search_order(g)
    E = len(order)
    if E > budget.max_edges:
        lb, wit = _greedy(order, wt, avail, k)
        raise BudgetError(f"brute_nuk: {E} edges exceeds budget of {budget.max_edges}", lb, wit)

    ends = [(u, v) for u, v in order]
    weights = [wt[e] for e in order]
    last = [-1] * g.vertex_count
    first = [E] * g.vertex_count
    for i, (u, v) in enumerate(ends):
        for x in (u, v):
            last[x] = max(last[x], i)
            first[x] = min(first[x], i)
    # frontier[i]: vertices with a decided edge (< i) and an undecided one (>= i)
    frontier = [tuple(x for x in range(g.vertex_count) if first[x] < i <= last[x])
                for i in range(E + 1)]
    # per vertex: undecided incident edges by start index, heaviest first
    inc = [[] for _ in range(g.vertex_count)]
    for i, (u, v) in enumerate(ends):
        inc[u].append(i)
        inc[v].append(i)
    active = [tuple(x for x in range(g.vertex_count) if last[x] >= i) for i in range(E + 1)]
    suffix = [0] * (E + 1)
    for i in range(E - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[i]

    perms = _color_permutations(avail, k)
    permuted = [[sum(1 << (p[c] - 1) for c in range(1, k + 1) if m >> (c - 1) & 1)
                 for m in range(1 << k)] for p in perms]
    used = [0] * g.vertex_count
    color = [0] * E
    clock = _Clock(budget, "brute_nuk")
    memo: dict = {}
    incumbent = [-1, None]

    def key(i):
        fr = frontier[i]
        if len(perms) == 1:
            return (i, tuple(used[x] for x in fr))
        return (i, min(tuple(pm[used[x]] for x in fr) for pm in permuted))

    def bound(i):
        total = 0
        half = 0
        for x in active[i]:
            free = avail[x] & ~used[x]
            if not free:
                continue
            r = bin(free).count("1")
            ws = sorted((weights[j] for j in inc[x] if j >= i
                         and free & avail[ends[j][0] ^ ends[j][1] ^ x] & ~used[ends[j][0] ^ ends[j][1] ^ x]),
                        reverse=True)
            half += sum(ws[:r])
        total = min(suffix[i], half // 2)
        return total

    def options(i):
        u, v = ends[i]
        free = avail[u] & avail[v] & ~used[u] & ~used[v]
        cols = [c for c in range(1, k + 1) if free >> (c - 1) & 1]
        return cols + [0]

    def search(i, alpha, acc):
        if i == E:
            if acc > incumbent[0]:
                incumbent[0] = acc
                incumbent[1] = tuple(color)
            return 0
        kk = key(i)
        hit = memo.get(kk)
        if hit is not None:
            val, exact = hit
            if exact or val <= alpha:
                return val
        clock.tick(incumbent[0], incumbent[1])
        ub = bound(i)
        if ub <= alpha:
            if hit is None or ub < hit[0]:
                memo[kk] = (ub, False)
            return ub
        u, v = ends[i]
        best = None
        for c in options(i):
            gain = weights[i] if c else 0
            floor = alpha if best is None or best < alpha else best
            if c:
                bit = 1 << (c - 1)
                used[u] |= bit
                used[v] |= bit
            color[i] = c
            r = search(i + 1, floor - gain, acc + gain)
            color[i] = 0
            if c:
                used[u] ^= bit
                used[v] ^= bit
            val = gain + r
            if best is None or val > best:
                best = val
        memo[kk] = (best, best > alpha)
        return best

    try:
        opt = search(0, -1, 0)
    except BudgetError as exc:
        lb, cols = incumbent
        wit = None
        if cols is not None:
            wit = KEdgeColoring(k, {ends[i]: c for i, c in enumerate(cols) if c})
        raise BudgetError(str(exc), max(lb, 0), wit) from None
    # replay the search order to recover the canonical witness
    assignment = {}
    target = opt
    for i in range(E):
        u, v = ends[i]
        for c in options(i):
            gain = weights[i] if c else 0
            if c:
                bit = 1 << (c - 1)
                used[u] |= bit
                used[v] |= bit
            r = search(i + 1, target - gain - 1, 0)
            if r == target - gain:
                if c:
                    assignment[ends[i]] = c
                target -= gain
                break
            if c:
                used[u] ^= bit
                used[v] ^= bit
        else:  # pragma: no cover - the optimum is always reproducible
            raise AssertionError("witness reconstruction failed")
    return opt, KEdgeColoring(k, assignment)


def _greedy(order, wt, avail, k):
    used = {}
    assignment = {}
    for e in order:
        u, v = e
        free = avail[u] & avail[v] & ~used.get(u, 0) & ~used.get(v, 0)
        if free:
            c = (free & -free).bit_length()
            assignment[e] = c
            used[u] = used.get(u, 0) | 1 << (c - 1)
            used[v] = used.get(v, 0) | 1 << (c - 1)
    return sum(wt[e] for e in assignment), KEdgeColoring(k, assignment)


# ---------------------------------------------------------------------------
# matchings


def _kuhn(g: Graph, side_a, usable=None) -> dict[int, int]:
    """Maximum bipartite matching by repeated augmenting paths (mate map)."""
    mate: dict[int, int] = {}
    adj = g.adjacency

    def augment(u, seen):
        for v in adj[u]:
            if usable is not None and ((u, v) if u < v else (v, u)) not in usable:
                continue
            if v in seen:
                continue
            seen.add(v)
            if v not in mate or augment(mate[v], seen):
                mate[v] = u
                mate[u] = v
                return True
        return False

    for u in sorted(side_a):
        if u not in mate:
            augment(u, set())
    return mate


def max_matching(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> frozenset:
    """A maximum matching of ``g`` as a frozenset of canonical edges.

    Bipartite graphs use augmenting paths; other graphs fall back to
    :func:`brute_nuk` with ``k = 1`` and are subject to ``budget``.
    """
    bip = bipartition(g)
    if bip is not None:
        mate = _kuhn(g, bip.side_a)
        return frozenset((u, v) for u, v in mate.items() if u < v)
    _, col = brute_nuk(g, 1, budget=budget)
    return frozenset(col.edges)


def matching_number(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> int:
    return len(max_matching(g, budget))


def _nu_upper(g: Graph, edges: list[Edge], matched: set, bip) -> int:
    """Upper bound on the matching number of ``edges`` avoiding ``matched``."""
    live = [e for e in edges if e[0] not in matched and e[1] not in matched]
    if not live:
        return 0
    sub = Graph(g.vertex_count, tuple(live))
    if bip is not None:
        return len(_kuhn(sub, bip.side_a)) // 2
    # fractional bound via the bipartite double cover
    n = g.vertex_count
    cover = Graph(2 * n, tuple((u, v + n) for u, v in live) + tuple((v, u + n) for u, v in live))
    return len(_kuhn(cover, range(n))) // 4


def enumerate_maximum_matchings(
    g: Graph, budget: SearchBudget = DEFAULT_ENUM_BUDGET
) -> Iterator[tuple[Edge, ...]]:
    """Yield every maximum matching of ``g`` once, lexicographically ordered.

    Branches on "edge in / edge out" in canonical edge order and prunes any
    branch whose matching-number upper bound falls short of ``nu(g)``.
    Raises :class:`BudgetError` mid-stream if the budget runs out; whatever
    was yielded before that is then an incomplete list.
    """
    if len(g.edges) > budget.max_edges:
        raise BudgetError(f"enumeration: {len(g.edges)} edges exceeds budget of {budget.max_edges}")
    bip = bipartition(g)
    nu = len(max_matching(g, SearchBudget(max_edges=max(budget.max_edges, len(g.edges)),
                                          max_nodes_expanded=budget.max_nodes_expanded,
                                          time_limit=budget.time_limit)))
    edges = list(g.edges)
    clock = _Clock(budget, "enumerate_maximum_matchings")
    chosen: list[Edge] = []
    matched: set = set()

    def rec(i):
        clock.tick()
        if len(chosen) == nu:
            yield tuple(chosen)
            return
        if i == len(edges):
            return
        if len(chosen) + _nu_upper(g, edges[i:], matched, bip) < nu:
            return
        u, v = edges[i]
        if u not in matched and v not in matched:
            chosen.append(edges[i])
            matched.update((u, v))
            yield from rec(i + 1)
            chosen.pop()
            matched.difference_update((u, v))
        yield from rec(i + 1)

    yield from rec(0)


def list_maximum_matchings(g: Graph, budget: SearchBudget = DEFAULT_ENUM_BUDGET) -> list:
    return list(enumerate_maximum_matchings(g, budget))


class MatchingSpectrum(NamedTuple):
    nu: int
    ell: int
    big_l: int
    #: maximum matching F attaining ell, and a maximum matching of G - F
    ell_witness: tuple
    ell_residual: tuple
    #: maximum matching F attaining L, and a maximum matching of G - F
    big_l_witness: tuple
    big_l_residual: tuple
    count: int


def matching_spectrum(g: Graph, budget: SearchBudget = DEFAULT_ENUM_BUDGET) -> MatchingSpectrum:
    """``nu``, ``ell = min nu(G-F)`` and ``L = max nu(G-F)`` over maximum matchings F."""
    inner = SearchBudget(max_edges=max(budget.max_edges, len(g.edges)),
                         max_nodes_expanded=budget.max_nodes_expanded,
                         time_limit=budget.time_limit)
    lo = hi = None
    count = 0
    for f in enumerate_maximum_matchings(g, budget):
        count += 1
        res = tuple(sorted(max_matching(delete_edges(g, f), inner)))
        if lo is None or len(res) < len(lo[1]):
            lo = (f, res)
        if hi is None or len(res) > len(hi[1]):
            hi = (f, res)
    if lo is None:  # no edges: the empty matching is the only maximum matching
        return MatchingSpectrum(0, 0, 0, (), (), (), (), 1)
    return MatchingSpectrum(len(lo[0]), len(lo[1]), len(hi[1]), lo[0], lo[1], hi[0], hi[1], count)


def cubic_three_colorability(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """True iff the cubic graph ``g`` is 3-edge-colorable, decided by ``nu_2 = |V|``."""
    degs, hi, lo = degree_profile(g)
    if g.vertex_count == 0 or hi != 3 or lo != 3:
        raise InputError("graph is not cubic")
    value, _ = brute_nuk(g, 2, budget=budget)
    return value == g.vertex_count
