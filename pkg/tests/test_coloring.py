from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_graph
from girthcolor.coloring import (
    ColorBudget,
    Coloring,
    PaletteConstraint,
    Verdict,
    chromatic_number,
    decide_k_colorable,
    dsatur_greedy,
    is_vertex_critical,
    random_colourable,
)
from girthcolor.constructions import mycielski
from girthcolor.graph import Graph, complete_graph, cycle_graph, petersen_graph
from test_graph import graphs


@lru_cache(maxsize=None)
def all_assignments(n: int, k: int) -> np.ndarray:
    """Every map V -> {0..k-1} as rows of a (k**n, n) array."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(itertools.product(range(k), repeat=n)), dtype=np.int8)


def brute_colourable(G: Graph, k: int, allowed=None) -> bool:
    if k == 0:
        return G.order == 0
    cols = all_assignments(G.order, k)
    ok = np.ones(len(cols), dtype=bool)
    for u, v in G.edges():
        ok &= cols[:, u] != cols[:, v]
    if allowed is not None:
        for v, mask in enumerate(allowed):
            ok &= ((mask >> cols[:, v].astype(np.int64)) & 1).astype(bool)
    return bool(ok.any())


def brute_chromatic(G: Graph) -> int:
    k = 0
    while not brute_colourable(G, k):
        k += 1
    return k


def test_exact_solver_agrees_with_brute_force_on_ten_thousand_graphs():
    rng = random.Random(2024)
    disagreements = []
    for trial in range(10_000):
        n = rng.randint(1, 8)
        k = rng.randint(1, 4)
        G = random_graph(n, rng.choice([0.2, 0.35, 0.5, 0.7]), rng)
        want = brute_colourable(G, k)
        d = decide_k_colorable(G, k)
        if d.colorable != want or d.refuted == want:
            disagreements.append((trial, G, k))
        if d.colorable:
            assert d.coloring.is_proper(G)
    assert not disagreements


def test_plain_method_agrees_with_brute_force():
    rng = random.Random(99)
    for _ in range(2_000):
        n = rng.randint(1, 8)
        k = rng.randint(1, 4)
        G = random_graph(n, rng.random(), rng)
        d = decide_k_colorable(G, k, method="plain")
        assert d.colorable == brute_colourable(G, k)
        if d.colorable:
            assert d.coloring.is_proper(G)


@given(graphs(max_n=7, min_n=1), st.integers(1, 4), st.data())
def test_palette_constraints_match_brute_force(G, k, data):
    full = (1 << k) - 1
    allowed = tuple(data.draw(st.integers(1, full)) for _ in range(G.order))
    c = PaletteConstraint(k, allowed)
    want = brute_colourable(G, k, allowed)
    for method in ("dsatur", "plain"):
        d = decide_k_colorable(G, k, c, method=method)
        assert d.colorable == want
        if d.colorable:
            assert d.coloring.is_proper(G) and d.coloring.respects(c)


@given(graphs(max_n=7))
def test_chromatic_number_matches_brute_force(G):
    res = chromatic_number(G)
    assert res.exact == brute_chromatic(G)
    assert res.coloring.is_proper(G)
    assert str(res) == f"Exact({res.exact})"


@given(graphs(max_n=7, min_n=1))
def test_greedy_is_proper(G):
    assert Coloring(tuple(dsatur_greedy(G)), G.order).is_proper(G)


@given(graphs(max_n=10, min_n=1), st.integers(1, 5), st.integers(0, 2**31 - 1))
def test_random_colourable_is_one_sided(G, k, seed):
    col = random_colourable(k, G, seed=seed)
    if col is not None:
        assert col.is_proper(G) and col.k == k
    if G.order <= 7 and not brute_colourable(G, k):
        assert col is None


def test_random_colourable_is_deterministic():
    G = petersen_graph()
    assert random_colourable(3, G, seed=5) == random_colourable(3, G, seed=5)
    assert random_colourable(3, G, seed=5) is not None


@pytest.mark.parametrize(
    "G, chi",
    [
        (cycle_graph(5), 3),
        (cycle_graph(6), 2),
        (petersen_graph(), 3),
        (complete_graph(5), 5),
        (mycielski(cycle_graph(5)), 4),
        (mycielski(mycielski(cycle_graph(5))), 5),
        (Graph.empty(3), 1),
        (Graph.empty(0), 0),
    ],
)
def test_known_chromatic_numbers(G, chi):
    assert chromatic_number(G).exact == chi


@given(graphs(max_n=7, min_n=1))
def test_vertex_criticality_matches_brute_force(G):
    chi = brute_chromatic(G)
    want = all(brute_chromatic(G.delete_vertex(v)) < chi for v in range(G.order))
    assert is_vertex_critical(G, chi) == want


def test_criticality_known():
    assert is_vertex_critical(cycle_graph(5), 3)
    assert is_vertex_critical(cycle_graph(6), 2) is False
    assert is_vertex_critical(complete_graph(4), 4)
    assert is_vertex_critical(mycielski(cycle_graph(5)), 4)
    assert is_vertex_critical(Graph.empty(1), 1)
    assert not is_vertex_critical(Graph.empty(2), 1)


def test_budget_exhaustion_is_reported():
    G = mycielski(mycielski(cycle_graph(5)))
    d = decide_k_colorable(G, 4, budget=ColorBudget(node_limit=5))
    assert d.verdict is Verdict.BUDGET_EXHAUSTED and d.coloring is None
    d = decide_k_colorable(G, 4, budget=ColorBudget(node_limit=5), method="plain")
    assert d.verdict is Verdict.BUDGET_EXHAUSTED
    res = chromatic_number(G, ColorBudget(node_limit=5))
    assert res.lower <= 5 <= res.upper


def test_resuming_in_chunks_gives_same_verdict():
    G = mycielski(mycielski(cycle_graph(5)))
    for method in ("dsatur", "plain"):
        whole = decide_k_colorable(G, 4, method=method)
        chunked = decide_k_colorable(G, 4, method=method, chunk=3)
        assert whole.verdict is chunked.verdict is Verdict.NOT_COLORABLE
        assert whole.nodes == chunked.nodes


def test_invalid_arguments():
    with pytest.raises(ValueError):
        decide_k_colorable(cycle_graph(3), 0)
    with pytest.raises(ValueError):
        decide_k_colorable(cycle_graph(3), 2, method="magic")
    with pytest.raises(ValueError):
        PaletteConstraint(2, (0b100,))
    with pytest.raises(ValueError):
        PaletteConstraint(2, (0,))
    with pytest.raises(ValueError):
        decide_k_colorable(cycle_graph(3), 3, PaletteConstraint.unrestricted(2, 3))
    with pytest.raises(ValueError):
        Coloring((0, 3), 3)


def test_coloring_lines():
    assert Coloring((0, 1, 0), 2).to_lines() == "0 0\n1 1\n2 0\n"
