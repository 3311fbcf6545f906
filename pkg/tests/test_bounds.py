from __future__ import annotations

import json
from math import ceil

import pytest
from hypothesis import given
from hypothesis import strategies as st

from girthcolor.bounds import (
    Anchor,
    AnchorSet,
    build_bounds_table,
    lemma1_bound,
    lemma3_bound,
    moore_bound,
    odd_cycle_value,
)

# published lower entries, (g, k) -> n_g(k) lower bound
REFERENCE_LOWER = {
    (4, 4): 11, (5, 4): 21, (6, 4): 26, (7, 4): 30,
    (4, 5): 22, (5, 5): 29, (6, 5): 33, (7, 5): 66,
    (4, 6): 32, (5, 6): 36, (6, 6): 51, (7, 6): 127,
    (4, 7): 41, (5, 7): 45, (6, 7): 73, (7, 7): 218,
    (4, 8): 51, (5, 8): 57, (6, 8): 99, (7, 8): 345,
}  # fmt: skip

REFERENCE_UPPER = {(4, 6): 40, (4, 7): 77, (4, 8): 155, (5, 5): 80, (6, 4): 66, (7, 4): 171}


def tree_size(branching: list[int], depth: int) -> int:
    """Vertices of a rooted tree built level by level: a node at level i has branching[i] children."""
    level = [0]
    total = 1
    for i in range(depth):
        level = [c for _ in level for c in range(branching[i])]
        total += len(level)
    return total


def moore_tree(d: int, g: int) -> int:
    """Count the distinct vertices forced within distance floor((g-1)/2) of a vertex (odd g)
    or of an edge (even g) in a graph of minimum degree d and girth g."""
    if g % 2:
        radius = (g - 1) // 2
        return tree_size([d] + [d - 1] * (radius - 1), radius)
    # two roots joined by an edge, each growing (d-1)-ary trees of depth g/2 - 1
    return 2 * tree_size([d - 1] * (g // 2 - 1), g // 2 - 1)


class TestFormulas:
    @pytest.mark.parametrize(
        "g, k, prior, want",
        [(4, 7, 32, 41), (4, 8, 41, 51), (5, 6, 29, 36)],
    )
    def test_lemma1_examples(self, g, k, prior, want):
        assert lemma1_bound(g, k, prior) == want

    @given(st.integers(4, 9), st.integers(2, 40), st.integers(1, 10_000))
    def test_lemma1_strictly_increasing(self, g, k, prior):
        base = lemma1_bound(g, k, prior)
        assert lemma1_bound(g, k, prior + 1) > base
        assert lemma1_bound(g, k + 1, prior) > base
        assert base == prior + max(k, ceil(3 * (k - 2) / 2)) + 1

    @pytest.mark.parametrize("d, g, want", [(3, 5, 10), (3, 6, 14), (7, 5, 50), (3, 7, 22), (3, 8, 30)])
    def test_moore_examples(self, d, g, want):
        assert moore_bound(d, g) == want

    @pytest.mark.parametrize("d", range(3, 8))
    @pytest.mark.parametrize("g", range(3, 9))
    def test_moore_matches_tree(self, d, g):
        assert moore_bound(d, g) == moore_tree(d, g)

    @pytest.mark.parametrize("g, k, want", [(6, 4, 19), (7, 4, 29), (5, 8, 57), (4, 4, 9)])
    def test_lemma3_examples(self, g, k, want):
        assert lemma3_bound(g, k) == want

    @pytest.mark.parametrize("k", range(4, 9))
    def test_lemma3_girth5_tree(self, k):
        # centre of degree k, every other vertex of degree >= k-1
        assert lemma3_bound(5, k) == tree_size([k, k - 2], 2)

    @pytest.mark.parametrize("k", range(4, 9))
    def test_lemma3_girth7_tree(self, k):
        assert lemma3_bound(7, k) == tree_size([k, k - 2, k - 2], 3)

    def test_odd_cycle_value(self):
        assert [odd_cycle_value(g) for g in range(3, 9)] == [3, 5, 5, 7, 7, 9]

    @pytest.mark.parametrize(
        "call",
        [
            lambda: moore_bound(2, 5),
            lambda: moore_bound(1, 5),
            lambda: moore_bound(3, 2),
            lambda: lemma3_bound(8, 4),
            lambda: lemma3_bound(5, 3),
            lambda: lemma1_bound(3, 4, 5),
            lambda: lemma1_bound(4, 4, 0),
        ],
    )
    def test_rejects_bad_arguments(self, call):
        with pytest.raises(ValueError):
            call()


class TestTable:
    def test_reproduces_published_lower_entries(self):
        t = build_bounds_table(AnchorSet.default())
        got = {key: t.lower(*key) for key in REFERENCE_LOWER}
        assert got == REFERENCE_LOWER

    def test_upper_entries(self):
        t = build_bounds_table(AnchorSet.default())
        for key, up in REFERENCE_UPPER.items():
            assert t[key].upper == up
        assert t[(4, 4)].exact and t[(4, 5)].exact and t[(5, 4)].exact
        assert not t[(6, 4)].exact
        for c in t.cells.values():
            assert c.upper is None or c.lower <= c.upper

    def test_formulas_alone_fall_short_where_anchored(self):
        t = build_bounds_table(AnchorSet())
        short = {key for key, v in REFERENCE_LOWER.items() if t.lower(*key) < v}
        assert short == {(4, 4), (4, 5), (4, 6), (4, 7), (4, 8), (5, 4), (5, 5), (5, 6), (5, 7), (6, 4), (7, 4)}
        assert all(t.lower(*key) <= v for key, v in REFERENCE_LOWER.items())

    def test_empty_anchors_girth5_column(self):
        t = build_bounds_table(AnchorSet(), g_min=5, g_max=5)
        assert [t.lower(5, k) for k in range(4, 9)] == [k * k - k + 1 for k in range(4, 9)]

    def test_provenance(self):
        t = build_bounds_table(AnchorSet.default())
        assert t[(4, 7)].provenance == ("recurrence",)
        assert t[(5, 8)].provenance == ("tree count",)
        assert t[(4, 6)].provenance[0].startswith("anchor")

    def test_render_and_records(self):
        t = build_bounds_table(AnchorSet.default())
        text = t.render()
        assert "32-40" in text and ">=345" in text and "sources:" in text
        recs = t.records()
        assert len(recs) == 20
        assert {(r["g"], r["k"]): r["lower"] for r in recs} == REFERENCE_LOWER

    def test_anchor_loading(self, tmp_path):
        path = tmp_path / "anchors.json"
        path.write_text(json.dumps([{"g": 6, "k": 4, "lower": 40, "citation": "hypothetical"}]))
        a = AnchorSet.load(path)
        assert len(a) == 1 and a.get(6, 4).lower == 40 and not a.get(6, 4).exact
        t = build_bounds_table(a, g_min=6, g_max=6)
        assert t.lower(6, 4) == 40
        # the raised anchor propagates down the column through the recurrence
        assert t.lower(6, 5) == max(lemma1_bound(6, 5, 40), lemma3_bound(6, 5))

    def test_anchor_validation(self):
        with pytest.raises(ValueError):
            Anchor(4, 4, 11, True, "")
        with pytest.raises(ValueError):
            AnchorSet([Anchor(4, 4, 11, True, "x"), Anchor(4, 4, 12, True, "y")])
        with pytest.raises(TypeError):
            AnchorSet.default().entries[(9, 9)] = None

    def test_bad_grid(self):
        with pytest.raises(ValueError):
            build_bounds_table(AnchorSet(), g_min=3)
        with pytest.raises(ValueError):
            build_bounds_table(AnchorSet(), k_max=3)

    def test_inconsistent_upper(self):
        with pytest.raises(ValueError):
            build_bounds_table(AnchorSet.default(), upper={(4, 4): (5, "impossible")})
