"""Lower bounds on n_g(k), the smallest order of a k-chromatic graph of girth >= g."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import ceil
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping


def lemma1_bound(g: int, k: int, prior_lower: int) -> int:
    """Step from a lower bound on n_g(k-1) to one on n_g(k).

    A k-critical graph has minimum degree >= k-1; deleting a vertex with
    its neighbourhood (or a suitable pair) keeps a (k-1)-chromatic graph
    of the same girth.
    """
    if g < 4 or k < 2 or prior_lower < 1:
        raise ValueError("need g >= 4, k >= 2 and a positive prior bound")
    return prior_lower + max(k, ceil(3 * (k - 2) / 2)) + 1


def moore_bound(d: int, g: int) -> int:
    """Minimum order of a graph with minimum degree d and girth g."""
    if g < 3:
        raise ValueError("girth must be at least 3")
    if d == 2:
        raise ValueError("d = 2 gives cycles; the closed form divides by zero")
    if d < 2:
        raise ValueError("minimum degree must be at least 3")
    if g % 2:
        num = d * (d - 1) ** ((g - 1) // 2) - 2
    else:
        num = 2 * (d - 1) ** (g // 2) - 2
    return -(-num // (d - 2))


def lemma3_bound(g: int, k: int) -> int:
    """Tree-counting bound for a k-critical graph of girth g (4 <= g <= 7).

    Such a graph has minimum degree k-1 and a vertex of degree >= k.
    """
    if k < 4:
        raise ValueError("k must be at least 4")
    if g == 4:
        return 3 * k - 3
    if g == 5:
        return k * k - k + 1
    if g == 6:
        return 2 * k * k - 4 * k + 3
    if g == 7:
        return k**3 - 3 * k * k + 3 * k + 1
    raise ValueError(f"no closed form for girth {g}")


def odd_cycle_value(g: int) -> int:
    """n_g(3): the shortest odd cycle of length >= g."""
    return g if g % 2 else g + 1


@dataclass(frozen=True)
class Anchor:
    g: int
    k: int
    lower: int
    exact: bool
    citation: str

    def __post_init__(self) -> None:
        if not self.citation:
            raise ValueError("an anchor needs a citation")


class AnchorSet:
    """Known values and lower bounds keyed by (g, k)."""

    def __init__(self, anchors: Iterable[Anchor] = ()):
        table: dict[tuple[int, int], Anchor] = {}
        for a in anchors:
            key = (a.g, a.k)
            if key in table:
                raise ValueError(f"duplicate anchor for n_{a.g}({a.k})")
            table[key] = a
        self._table = MappingProxyType(table)

    @property
    def entries(self) -> Mapping[tuple[int, int], Anchor]:
        return self._table

    def get(self, g: int, k: int) -> Anchor | None:
        return self._table.get((g, k))

    def __len__(self) -> int:
        return len(self._table)

    @classmethod
    def default(cls) -> AnchorSet:
        return cls(
            [
                Anchor(4, 4, 11, True, "Chvatal 1974"),
                Anchor(4, 5, 22, True, "Jensen and Royle 1995"),
                Anchor(4, 6, 32, False, "computer search, 2017 manuscript"),
                Anchor(5, 4, 21, True, "Royle 2015"),
                Anchor(5, 5, 29, False, "computer search, 2017 manuscript"),
                Anchor(6, 4, 26, False, "3-colourability of all girth-6 graphs, 19 to 25 vertices"),
                Anchor(7, 4, 30, False, "3-colourability of all girth-7 graphs on 29 vertices"),
            ]
        )

    @classmethod
    def load(cls, path: str | Path) -> AnchorSet:
        """JSON list of {"g", "k", "lower", "exact", "citation"} records."""
        data = json.loads(Path(path).read_text())
        return cls(Anchor(int(r["g"]), int(r["k"]), int(r["lower"]), bool(r.get("exact", False)), r["citation"]) for r in data)


# known witnesses: (g, k) -> (order, description)
DEFAULT_UPPER: Mapping[tuple[int, int], tuple[int, str]] = MappingProxyType(
    {
        (4, 4): (11, "Grotzsch graph"),
        (4, 5): (22, "Jensen-Royle graph"),
        (4, 6): (40, "LCF(8,5) triangle-free graph"),
        (4, 7): (77, "77-vertex triangle-free graph"),
        (4, 8): (155, "Mycielskian of the 77-vertex graph"),
        (5, 4): (21, "Brinkmann graph"),
        (5, 5): (80, "LCF(4,20) graph"),
        (6, 4): (66, "LCF(6,11) graph"),
        (7, 4): (171, "LCF(9,19) graph"),
    }
)


@dataclass(frozen=True)
class Cell:
    lower: int
    provenance: tuple[str, ...]
    upper: int | None = None
    upper_source: str | None = None

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.upper == self.lower


@dataclass
class BoundsTable:
    g_values: tuple[int, ...]
    k_values: tuple[int, ...]
    cells: dict[tuple[int, int], Cell] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> Cell:
        return self.cells[key]

    def lower(self, g: int, k: int) -> int:
        return self.cells[(g, k)].lower

    def render(self) -> str:
        """Grid with one row per k: 'lower' or 'lower-upper', with footnotes."""
        width = 10
        lines = ["k\\g".ljust(5) + "".join(str(g).rjust(width) for g in self.g_values)]
        notes: list[str] = []
        for k in self.k_values:
            row = str(k).ljust(5)
            for g in self.g_values:
                c = self.cells[(g, k)]
                if c.exact:
                    text = str(c.lower)
                elif c.upper is not None:
                    text = f"{c.lower}-{c.upper}"
                else:
                    text = f">={c.lower}"
                row += text.rjust(width)
                src = ", ".join(c.provenance)
                if c.upper_source:
                    src += f"; upper: {c.upper_source}"
                notes.append(f"  n_{g}({k}): {src}")
            lines.append(row)
        return "\n".join(lines + ["", "sources:"] + notes)

    def records(self) -> list[dict[str, object]]:
        out = []
        for k in self.k_values:
            for g in self.g_values:
                c = self.cells[(g, k)]
                out.append({"g": g, "k": k, "lower": c.lower, "upper": c.upper, "provenance": list(c.provenance)})
        return out


def build_bounds_table(
    anchors: AnchorSet,
    g_max: int = 7,
    k_max: int = 8,
    *,
    g_min: int = 4,
    k_min: int = 4,
    upper: Mapping[tuple[int, int], tuple[int, str]] = DEFAULT_UPPER,
) -> BoundsTable:
    """Lower bound per cell as the maximum of every applicable source.

    Columns are filled with k ascending, starting from the odd-cycle value
    n_g(3), so the one-step recurrence chains down the column.
    """
    if g_min < 4 or k_min < 4 or g_max < g_min or k_max < k_min:
        raise ValueError("need 4 <= g_min <= g_max and 4 <= k_min <= k_max")
    table = BoundsTable(tuple(range(g_min, g_max + 1)), tuple(range(k_min, k_max + 1)))
    for g in table.g_values:
        prior = odd_cycle_value(g)
        for k in range(4, k_max + 1):
            options: list[tuple[int, str]] = [(lemma1_bound(g, k, prior), "recurrence")]
            if 4 <= g <= 7:
                options.append((lemma3_bound(g, k), "tree count"))
            options.append((moore_bound(k - 1, g), "Moore"))
            a = anchors.get(g, k)
            if a is not None:
                options.append((a.lower, f"anchor ({a.citation})"))
            best = max(v for v, _ in options)
            prior = best
            if k < k_min:
                continue
            prov = tuple(name for v, name in options if v == best)
            up = upper.get((g, k))
            cell = Cell(best, prov, up[0] if up else None, up[1] if up else None)
            if a is not None and a.exact and cell.upper is None:
                cell = Cell(best, prov, a.lower, a.citation)
            if cell.upper is not None and cell.upper < cell.lower:
                raise ValueError(f"n_{g}({k}): upper {cell.upper} below lower {cell.lower}")
            table.cells[(g, k)] = cell
    return table
