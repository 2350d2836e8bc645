"""Property-based checks of the solver invariants on small random graphs."""

from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st

from kecs.flow import build_network, max_flow_integral, solve_nuk_bipartite, solve_weighted_degree_constrained
from kecs.forest import solve_forest
from kecs.generators import random_bipartite, random_forest
from kecs.graph import Graph, bipartition, delete_edges, is_matching, validate_coloring
from kecs.oracle import brute_nuk, matching_spectrum, max_matching

from conftest import enumerate_nuk

seeds = st.integers(0, 2 ** 32 - 1)


def _bip(seed, n_max=9, e_max=12):
    rng = random.Random(seed)
    return random_bipartite(rng.randint(1, n_max), rng.uniform(0.2, 0.9), rng, max_edges=e_max)


@st.composite
def graphs(draw, n_max=7, e_max=10):
    n = draw(st.integers(1, n_max))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=e_max, unique=True)) if pairs else []
    return Graph(n, tuple(edges))


@given(graphs(), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_color_classes_are_matchings(g, k):
    c = brute_nuk(g, k)[1]
    assert validate_coloring(g, c) == []
    assert all(is_matching(g, cls) for cls in c.color_classes().values())


@given(graphs(e_max=7), st.integers(1, 2))
@settings(max_examples=40, deadline=None)
def test_brute_matches_total_enumeration(g, k):
    assert brute_nuk(g, k)[0] == enumerate_nuk(g, k)


@given(graphs(), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_more_colors_never_hurt_and_classes_bound(g, k):
    a, b = brute_nuk(g, k)[0], brute_nuk(g, k + 1)[0]
    assert a <= b
    assert a <= min(len(g.edges), k * len(max_matching(g)))


@given(graphs(), st.data())
def test_delete_edges_composes(g, data):
    f1 = data.draw(st.sets(st.sampled_from(g.edges))) if g.edges else set()
    rest = [e for e in g.edges if e not in f1]
    f2 = data.draw(st.sets(st.sampled_from(rest))) if rest else set()
    assert delete_edges(delete_edges(g, f1), f2) == delete_edges(g, f1 | f2)


@given(seeds, st.integers(1, 3))
@settings(max_examples=80, deadline=None)
def test_flow_equals_oracle_and_cut(seed, k):
    g = _bip(seed)
    c = solve_nuk_bipartite(g, k)
    assert validate_coloring(g, c) == []
    assert len(c.edges) == brute_nuk(g, k)[0]
    net = build_network(g, bipartition(g), k)
    res = max_flow_integral(net)
    assert res.value == len(c.edges) == res.cut_capacity(net)


@given(seeds)
@settings(max_examples=60, deadline=None)
def test_flow_k1_is_maximum_matching(seed):
    g = _bip(seed)
    assert len(solve_nuk_bipartite(g, 1).edges) == len(max_matching(g))


@given(seeds, st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_unit_weight_degree_bound_equals_nuk(seed, k):
    g = _bip(seed)
    s = solve_weighted_degree_constrained(g, None, k, {e: 1 for e in g.edges})
    assert len(s) == len(solve_nuk_bipartite(g, k).edges)


@given(seeds, st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_weighted_flow_equals_weighted_oracle(seed, k):
    g = _bip(seed, e_max=11)
    rng = random.Random(seed)
    w = {e: rng.randint(1, 20) for e in g.edges}
    s = solve_weighted_degree_constrained(g, None, k, w)
    assert sum(w[e] for e in s) == brute_nuk(g, k, w)[0]


@st.composite
def forests(draw):
    rng = random.Random(draw(seeds))
    g = random_forest(rng.randint(1, 12), rng)
    k = draw(st.integers(1, 3))
    w = {e: rng.randint(1, 10) for e in g.edges}
    wc = {v: frozenset(c for c in range(1, k + 1) if rng.random() < 0.6)
          for v in range(g.vertex_count) if rng.random() < 0.5}
    return g, k, w, wc


@given(forests())
@settings(max_examples=80, deadline=None)
def test_forest_dp_equals_oracle(case):
    g, k, w, wc = case
    c = solve_forest(g, k, w, wc)
    assert validate_coloring(g, c, wc) == []
    assert c.weight(w) == brute_nuk(g, k, w, wc)[0]


@given(forests(), st.data())
@settings(max_examples=60, deadline=None)
def test_forest_enlarging_constraints_is_monotone(case, data):
    g, k, w, wc = case
    if not wc:
        return
    v = data.draw(st.sampled_from(sorted(wc)))
    bigger = dict(wc)
    bigger[v] = frozenset(range(1, k + 1))
    assert solve_forest(g, k, w, bigger).weight(w) >= solve_forest(g, k, w, wc).weight(w)


@given(forests(), st.integers(2, 50))
@settings(max_examples=60, deadline=None)
def test_forest_scaling_preserves_argmax(case, factor):
    g, k, w, wc = case
    scaled = {e: factor * x for e, x in w.items()}
    a, b = solve_forest(g, k, w, wc), solve_forest(g, k, scaled, wc)
    assert b.weight(scaled) == factor * a.weight(w)
    assert a.edges == b.edges


@given(seeds, st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_forest_unit_equals_flow(seed, k):
    rng = random.Random(seed)
    g = random_forest(rng.randint(1, 14), rng)
    assert len(solve_forest(g, k).edges) == len(solve_nuk_bipartite(g, k).edges)


@given(seeds, st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_bipartite_inequality(seed, k):
    g = _bip(seed)
    nu = [0] + [len(solve_nuk_bipartite(g, j).edges) for j in range(1, 2 * k + 1)]
    assert all(2 * nu[k] >= nu[k - i] + nu[k + i] for i in range(k + 1))


@given(graphs(n_max=8, e_max=10))
@settings(max_examples=40, deadline=None)
def test_spectrum_bounds(g):
    sp = matching_spectrum(g)
    assert 0 <= sp.ell <= sp.big_l <= sp.nu == len(max_matching(g))
    assert is_matching(g, sp.big_l_witness) and len(sp.big_l_witness) == sp.nu
    assert is_matching(delete_edges(g, sp.big_l_witness), sp.big_l_residual)
