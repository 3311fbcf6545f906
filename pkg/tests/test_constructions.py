from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from girthcolor.coloring import ColorBudget, chromatic_number, decide_k_colorable
from girthcolor.constructions import (
    BudgetExhausted,
    CandidateVerdict,
    QualifyingSet,
    SNotIndependent,
    StreamExhausted,
    droogendijk_condition_holds,
    droogendijk_construct,
    droogendijk_parts,
    explore_edge_perturbations,
    grotzsch_graph,
    independent_sets,
    mycielski,
    search_qualifying_sets,
)
from girthcolor.graph import (
    Graph,
    GraphBuilder,
    complete_graph,
    cycle_graph,
    edge_closes_short_cycle,
    girth,
    is_independent,
    is_triangle_free,
    petersen_graph,
)
from test_graph import graphs


def random_triangle_free(n: int, p: float, rng: random.Random) -> Graph:
    b = GraphBuilder(n)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    for u, v in pairs:
        if rng.random() < p and not edge_closes_short_cycle(b, u, v, 4):
            b.add_edge(u, v)
    return b.freeze()


@st.composite
def triangle_free_graphs(draw, max_n=9, min_n=1):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**31 - 1))
    p = draw(st.sampled_from([0.3, 0.5, 0.8, 1.0]))
    return random_triangle_free(n, p, random.Random(seed))


def literal_condition(G: Graph, S, k: int) -> bool:
    """No proper (k-1)-colouring of G - S spends at most k-2 colours on B."""
    p = droogendijk_parts(G, S)
    rest = sorted(p.A + p.B)
    H = G.induced(rest)
    pos_b = [rest.index(b) for b in p.B]
    edges = list(H.edges())
    for col in itertools.product(range(k - 1), repeat=len(rest)):
        if any(col[u] == col[v] for u, v in edges):
            continue
        if len({col[i] for i in pos_b}) <= k - 2:
            return False
    return True


class TestMycielski:
    def test_grotzsch(self):
        G = grotzsch_graph()
        assert (G.order, G.size) == (11, 20)
        assert girth(G).length == 4
        assert chromatic_number(G).exact == 4

    @given(graphs(max_n=12))
    def test_order_and_size(self, G):
        M = mycielski(G)
        assert M.order == 2 * G.order + 1
        assert M.size == 3 * G.size + G.order

    def test_preserves_triangle_freeness_on_random_graphs(self):
        rng = random.Random(31)
        for _ in range(1_000):
            G = random_triangle_free(rng.randint(1, 14), rng.random(), rng)
            assert is_triangle_free(mycielski(G))

    @settings(max_examples=60)
    @given(graphs(max_n=9, min_n=1))
    def test_raises_chromatic_number_by_one(self, G):
        assert chromatic_number(mycielski(G)).exact == chromatic_number(G).exact + 1


class TestDroogendijkParts:
    def test_nine_cycle(self):
        p = droogendijk_parts(cycle_graph(9), [0, 3])
        assert p.A == (1, 2, 4, 8) and p.B == (5, 6, 7)
        assert p.a_prime == {1: 9, 2: 10, 4: 11, 8: 12}
        assert p.b_prime == {5: 13, 6: 14, 7: 15}
        assert (p.alpha, p.beta, p.order) == (16, 17, 18)

    def test_five_cycle(self):
        p = droogendijk_parts(cycle_graph(5), [0])
        assert p.A == (1, 4) and p.B == (2, 3)

    def test_dependent_set_rejected(self):
        with pytest.raises(SNotIndependent):
            droogendijk_parts(cycle_graph(5), [0, 1])
        with pytest.raises(ValueError):
            droogendijk_parts(cycle_graph(5), [7])

    def test_construction_edges(self):
        G = cycle_graph(9)
        p = droogendijk_parts(G, [0, 3])
        H = droogendijk_construct(G, [0, 3])
        assert H.induced(range(9)) == G
        for x, xp in (*p.a_prime.items(), *p.b_prime.items()):
            assert set(H.neighbors(xp)) - {p.alpha, p.beta} == set(G.neighbors(x))
        assert set(H.neighbors(p.alpha)) == {0, 3, *p.b_prime.values()}
        assert set(H.neighbors(p.beta)) == {*p.a_prime.values(), *p.b_prime.values()}

    @settings(max_examples=80)
    @given(triangle_free_graphs(max_n=10), st.data())
    def test_order_and_triangle_freeness(self, G, data):
        sets = list(independent_sets(G, 3))
        S = data.draw(st.sampled_from(sets))
        H = droogendijk_construct(G, S)
        assert H.order == 2 * G.order + 2 - len(S)
        assert is_triangle_free(H)


class TestDroogendijkCondition:
    def test_nine_cycle(self):
        G = cycle_graph(9)
        assert droogendijk_condition_holds(G, [0, 3], 3)
        H = droogendijk_construct(G, [0, 3])
        assert H.order == 18
        assert chromatic_number(H).exact == 3

    def test_five_cycle_pair_against_literal_oracle(self):
        G = cycle_graph(5)
        assert droogendijk_condition_holds(G, [0, 2], 3) == literal_condition(G, [0, 2], 3)

    @settings(max_examples=120)
    @given(triangle_free_graphs(max_n=8, min_n=1), st.integers(2, 4), st.data())
    def test_matches_literal_oracle(self, G, k, data):
        S = data.draw(st.sampled_from(list(independent_sets(G, 3))))
        assert droogendijk_condition_holds(G, S, k) == literal_condition(G, S, k)

    @settings(max_examples=80)
    @given(triangle_free_graphs(max_n=9, min_n=2), st.data())
    def test_single_vertex_always_qualifies(self, G, data):
        k = chromatic_number(G).exact
        if k < 3:
            return
        v = data.draw(st.integers(0, G.order - 1))
        assert droogendijk_condition_holds(G, [v], k)

    def test_single_vertex_claim_needs_triangle_freeness(self):
        assert not droogendijk_condition_holds(complete_graph(3), [0], 3)

    def test_k_two(self):
        # B nonempty: no 0-colouring of B, vacuous
        assert droogendijk_condition_holds(cycle_graph(4), [0], 2)
        assert not droogendijk_condition_holds(cycle_graph(4), [0, 2], 2)
        assert not droogendijk_condition_holds(Graph.empty(1), [0], 3)

    def test_budget_exhaustion(self):
        G = mycielski(grotzsch_graph())
        with pytest.raises(BudgetExhausted):
            droogendijk_condition_holds(G, [0], 5, ColorBudget(node_limit=1))
        with pytest.raises(ValueError):
            droogendijk_condition_holds(G, [0], 1)


class TestSearch:
    def test_independent_set_order(self):
        sets = list(independent_sets(cycle_graph(5), 2))
        assert sets == [(0,), (1,), (2,), (3,), (4,), (0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]
        assert all(is_independent(cycle_graph(5), S) for S in sets)

    def test_skip_b_empty(self):
        # in C4 {0,2} dominates everything
        assert (0, 2) not in list(independent_sets(cycle_graph(4), 2, skip_b_empty=True))
        assert (0, 2) in list(independent_sets(cycle_graph(4), 2))

    def test_grotzsch_single_vertices(self):
        items = list(search_qualifying_sets(grotzsch_graph(), 4, 1, seed=1))
        assert len(items) == 11
        for item in items:
            assert isinstance(item, QualifyingSet)
            assert item.graph.order == 23 and is_triangle_free(item.graph)
            if item.verdict is CandidateVerdict.CONFIRMED:
                assert decide_k_colorable(item.graph, 4).refuted
        assert any(i.verdict is CandidateVerdict.CONFIRMED for i in items)

    def test_refuted_candidates_are_colourable(self):
        for item in search_qualifying_sets(cycle_graph(9), 3, 3, seed=2):
            assert isinstance(item, QualifyingSet)
            if item.verdict is CandidateVerdict.REFUTED:
                assert decide_k_colorable(item.graph, 3).colorable
            else:
                assert item.verdict is CandidateVerdict.CONFIRMED
                assert chromatic_number(item.graph).exact == 4

    def test_unverified_stream(self):
        items = list(search_qualifying_sets(grotzsch_graph(), 4, 1, verify=False))
        assert {i.verdict for i in items} <= {CandidateVerdict.REFUTED, CandidateVerdict.INDETERMINATE}

    def test_exhaustion_ends_stream(self):
        items = list(search_qualifying_sets(mycielski(grotzsch_graph()), 5, 1, ColorBudget(node_limit=1)))
        assert isinstance(items[-1], StreamExhausted)
        assert all(not isinstance(i, StreamExhausted) for i in items[:-1])

    def test_wall_clock(self):
        items = list(search_qualifying_sets(grotzsch_graph(), 4, 2, wall_clock=0.0))
        assert len(items) == 1 and isinstance(items[0], StreamExhausted)


class TestEdgePerturbations:
    def test_groetzsch_is_isolated(self):
        assert list(explore_edge_perturbations(grotzsch_graph(), 4, 4, 2)) == [grotzsch_graph()]

    def test_five_cycle(self):
        # every chord makes a triangle; every deletion drops chi to 2
        out = list(explore_edge_perturbations(cycle_graph(5), 3, 4, 2))
        assert out == [cycle_graph(5)]

    def test_single_edge(self):
        out = list(explore_edge_perturbations(complete_graph(2), 2, 3, 3))
        assert out == [complete_graph(2)]

    def test_grotzsch_neighbourhood(self):
        # the Groetzsch graph is edge-critical and maximal triangle-free, so pad it
        G = Graph(12, grotzsch_graph().adjacency + (0,))
        out = list(explore_edge_perturbations(G, 4, 4, 1, seed=3))
        assert out[0] == G and len(out) > 1
        keys = set()
        for H in out:
            assert isinstance(H, Graph)
            assert girth(H).at_least(4)
            assert chromatic_number(H).exact == 4
            d = sum(1 for e in H.edges() if not G.has_edge(*e)) + sum(1 for e in G.edges() if not H.has_edge(*e))
            assert d <= 1
            keys.add(H.adjacency)
        assert len(keys) == len(out)

    def test_max_graphs(self):
        out = list(explore_edge_perturbations(Graph(12, grotzsch_graph().adjacency + (0,)), 4, 4, 3, max_graphs=4))
        assert len(out) == 4

    def test_petersen_removals_filtered(self):
        out = list(explore_edge_perturbations(petersen_graph(), 3, 5, 1))
        for H in out[1:]:
            assert chromatic_number(H).exact == 3
