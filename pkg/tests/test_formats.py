from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fixture_text, load_fixture
from girthcolor.formats import (
    FormatError,
    decode_graph6,
    emit_adjacency_list,
    encode_graph6,
    parse_adjacency_list,
)
from girthcolor.graph import Graph, cycle_graph, petersen_graph
from test_graph import graphs, to_nx


def nx_graph6(G: Graph) -> str:
    return nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()


class TestGraph6:
    def test_known_strings(self):
        assert encode_graph6(Graph.empty(0)) == "?"
        assert encode_graph6(cycle_graph(5)) == "Dhc"
        assert encode_graph6(petersen_graph()) == nx_graph6(petersen_graph())

    @given(graphs(max_n=12))
    def test_matches_networkx(self, G):
        text = encode_graph6(G)
        assert text == nx_graph6(G)
        H = nx.from_graph6_bytes(text.encode())
        assert sorted(tuple(sorted(e)) for e in H.edges()) == sorted(G.edges())

    @given(graphs(max_n=12))
    def test_roundtrip(self, G):
        assert decode_graph6(encode_graph6(G)) == G

    @pytest.mark.parametrize("n", [62, 63, 64, 100])
    def test_long_order_field(self, n):
        G = cycle_graph(n)
        text = encode_graph6(G)
        assert text.startswith("~") == (n >= 63)
        assert text == nx_graph6(G)
        assert decode_graph6(text) == G

    def test_header_accepted(self):
        assert decode_graph6(">>graph6<<Dhc") == cycle_graph(5)

    def test_fixture_roundtrip(self):
        G = load_fixture("trianglefree_chi7_77.adj")
        text = encode_graph6(G)
        assert text == nx_graph6(G)
        assert decode_graph6(text) == G

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("", "empty"),
            ("D h", "invalid graph6 character"),
            ("Dh", "expected 2 data bytes"),
            ("Dhcc", "expected 2 data bytes"),
            ("Dhd", "padding"),
            ("~?", "truncated"),
            (":Fa@x^", "sparse6"),
        ],
    )
    def test_errors(self, text, fragment):
        with pytest.raises(FormatError, match=fragment):
            decode_graph6(text)

    def test_error_offset(self):
        with pytest.raises(FormatError) as exc:
            decode_graph6("D\x01c")
        assert exc.value.offset == 1


class TestAdjacencyList:
    def test_parse_and_emit(self):
        G = parse_adjacency_list("0: 1 4\n1: 2\n2: 3\n3: 4\n")
        assert G == cycle_graph(5)
        assert parse_adjacency_list(emit_adjacency_list(G)) == G

    @given(graphs(max_n=10))
    def test_roundtrip(self, G):
        assert parse_adjacency_list(emit_adjacency_list(G), order=G.order) == G

    def test_continuation_and_separators(self):
        text = "# comment\n0: 1 & 2 \\\\\n   3\n1: 2\n2:\n3:\n"
        G = parse_adjacency_list(text)
        assert sorted(G.edges()) == [(0, 1), (0, 2), (0, 3), (1, 2)]

    def test_fixture_wrapped_row(self):
        G = parse_adjacency_list(fixture_text("trianglefree_chi7_77.adj"))
        assert G.order == 77 and G.size == 645

    def test_explicit_order_keeps_isolated(self):
        assert parse_adjacency_list("0: 1\n", order=4).order == 4

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("a: 1\n", "unknown vertex label"),
            ("0: 1\n0: 2\n", "duplicate row"),
            ("0: x\n", "bad neighbour"),
            ("0: 0\n", "self-loop"),
            ("  1 2\n", "continuation"),
        ],
    )
    def test_errors(self, text, fragment):
        with pytest.raises(FormatError, match=fragment):
            parse_adjacency_list(text)

    def test_out_of_range(self):
        with pytest.raises(FormatError, match="out of range"):
            parse_adjacency_list("0: 5\n", order=3)
