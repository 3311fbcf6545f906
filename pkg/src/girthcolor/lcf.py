"""Graphs with a semiregular automorphism of r cycles of length s.

Vertex ``x`` of an LCF(r, s) graph lies in row ``x % r``; the automorphism is
the shift ``x -> x + r (mod rs)``. An entry ``t`` in row ``i`` stands for the
edge orbit ``{(i + r*j, i + r*j + t) : 0 <= j < s}``.
"""

from __future__ import annotations

import logging
import random
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .coloring import random_colourable
from .graph import (
    Graph,
    GraphBuilder,
    contains_odd_cycle,
    distance_at_most,
    edge_closes_short_cycle,
    iter_bits,
)

log = logging.getLogger(__name__)


class LcfError(ValueError):
    pass


def _signed(t: int, n: int) -> int:
    t %= n
    return t - n if t > n // 2 else t


def orbit_key(row: int, offset: int, r: int, s: int) -> tuple[int, int]:
    """Canonical (row, signed offset) naming the orbit generated by (row, offset).

    The same edge set is generated by ``((row + t) % r, -t)``; of the two,
    the one smaller in (row, |offset|, negative-last) order is chosen.
    """
    n = r * s
    t = _signed(offset, n)
    if t == 0:
        raise LcfError("offset 0 would create self-loops")
    a = (row % r, t)
    b = ((row + t) % r, _signed(-t, n))
    return min(a, b, key=lambda p: (p[0], abs(p[1]), p[1] < 0))


@dataclass(frozen=True)
class EdgeOrbit:
    row: int
    offset: int
    edges: tuple[tuple[int, int], ...]

    @property
    def key(self) -> tuple[int, int]:
        return (self.row, self.offset)

    def __len__(self) -> int:
        return len(self.edges)


def make_orbit(row: int, offset: int, r: int, s: int) -> EdgeOrbit:
    n = r * s
    key_row, key_t = orbit_key(row, offset, r, s)
    edges = set()
    for j in range(s):
        x = key_row + r * j
        y = (x + key_t) % n
        edges.add((min(x, y), max(x, y)))
    return EdgeOrbit(key_row, key_t, tuple(sorted(edges)))


def get_orbits(r: int, s: int) -> list[EdgeOrbit]:
    """Every edge orbit of the shift on ``r*s`` vertices, once each, in key order."""
    if r < 1 or s < 2:
        raise LcfError("need r >= 1 and s >= 2")
    n = r * s
    keys = set()
    for i in range(r):
        for t in range(1, n // 2 + 1):
            keys.add(orbit_key(i, t, r, s))
            keys.add(orbit_key(i, -t, r, s))
    ordered = sorted(keys, key=lambda p: (p[0], abs(p[1]), p[1] < 0))
    return [make_orbit(i, t, r, s) for i, t in ordered]


@dataclass(frozen=True)
class LcfScheme:
    r: int
    s: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.r < 1 or self.s < 1:
            raise LcfError("r and s must be positive")
        if len(self.rows) != self.r:
            raise LcfError(f"expected {self.r} rows, got {len(self.rows)}")
        n = self.order
        for i, row in enumerate(self.rows):
            for t in row:
                if t % n == 0:
                    raise LcfError(f"row {i}: offset {t} is a self-loop orbit")
                if abs(t) > n / 2:
                    raise LcfError(f"row {i}: |{t}| exceeds rs/2 = {n / 2}")

    @property
    def order(self) -> int:
        return self.r * self.s

    def orbit_keys(self) -> list[tuple[int, int]]:
        seen = dict.fromkeys(
            orbit_key(i, t, self.r, self.s) for i, row in enumerate(self.rows) for t in row
        )
        return list(seen)

    def orbits(self) -> list[EdgeOrbit]:
        return [make_orbit(i, t, self.r, self.s) for i, t in self.orbit_keys()]

    def canonical(self) -> LcfScheme:
        """Each orbit listed once, in the row of its canonical key."""
        rows: list[list[int]] = [[] for _ in range(self.r)]
        for i, t in sorted(self.orbit_keys(), key=lambda p: (p[0], abs(p[1]), p[1] < 0)):
            rows[i].append(t)
        return LcfScheme(self.r, self.s, tuple(tuple(row) for row in rows))

    def expanded(self) -> LcfScheme:
        """Each orbit listed from both end rows, so row length equals degree."""
        n = self.order
        rows: list[set[int]] = [set() for _ in range(self.r)]
        for i, t in self.orbit_keys():
            rows[i].add(t)
            rows[(i + t) % self.r].add(_signed(-t, n))
        return LcfScheme(
            self.r, self.s,
            tuple(tuple(sorted(row, key=lambda t: (t < 0, t))) for row in rows),
        )

    @classmethod
    def from_orbits(cls, r: int, s: int, orbits: Sequence[EdgeOrbit]) -> LcfScheme:
        rows: list[list[int]] = [[] for _ in range(r)]
        for o in orbits:
            rows[o.row].append(o.offset)
        return cls(r, s, tuple(tuple(row) for row in rows)).canonical()


def realize(scheme: LcfScheme) -> Graph:
    b = GraphBuilder(scheme.order)
    for orb in scheme.orbits():
        for u, v in orb.edges:
            b.add_edge(u, v)
    return b.freeze()


def shift_is_automorphism(G: Graph, r: int) -> bool:
    n = G.order
    return all(G.has_edge((u + r) % n, (v + r) % n) for u, v in G.edges())


# -- LCF table text format --------------------------------------------------

_HEADER = re.compile(r"^\s*LCF\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$", re.IGNORECASE)
_ROW = re.compile(r"^\s*(\S+?)\s*:(.*)$")


def parse_lcf_table(text: str, s: int | None = None) -> LcfScheme:
    """Parse row-labelled offset lists; ``s`` may come from an ``LCF(r,s)`` header line."""
    header: tuple[int, int] | None = None
    rows: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.replace("\\\\", " ").replace("&", " ").replace("$", " ")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        h = _HEADER.match(line)
        if h:
            header = (int(h.group(1)), int(h.group(2)))
            continue
        m = _ROW.match(line)
        if not m:
            raise LcfError(f"line {lineno}: expected 'row: offsets'")
        try:
            label = int(m.group(1))
        except ValueError:
            raise LcfError(f"line {lineno}: malformed row label {m.group(1)!r}") from None
        if label in rows:
            raise LcfError(f"line {lineno}: duplicate row {label}")
        offsets = []
        for tok in m.group(2).split():
            try:
                t = int(tok)
            except ValueError:
                raise LcfError(f"line {lineno}: bad offset {tok!r}") from None
            if t == 0:
                raise LcfError(f"line {lineno}: offset 0 is a self-loop orbit")
            offsets.append(t)
        rows[label] = offsets
    r = len(rows)
    if sorted(rows) != list(range(r)):
        raise LcfError(f"row labels must be 0..{r - 1}, got {sorted(rows)}")
    if header is not None:
        if header[0] != r:
            raise LcfError(f"header says r={header[0]} but table has {r} rows")
        if s is not None and s != header[1]:
            raise LcfError(f"header says s={header[1]} but s={s} was requested")
        s = header[1]
    if s is None:
        raise LcfError("cycle length s unknown: pass s or add an 'LCF(r,s)' header")
    return LcfScheme(r, s, tuple(tuple(rows[i]) for i in range(r)))


def emit_lcf_table(scheme: LcfScheme, header: bool = True) -> str:
    lines = [f"LCF({scheme.r},{scheme.s})"] if header else []
    width = len(str(scheme.r - 1))
    for i, row in enumerate(scheme.rows):
        lines.append(f"{i:>{width}}: " + " ".join(str(t) for t in row))
    return "\n".join(line.rstrip() for line in lines) + "\n"


# -- incremental orbit placement --------------------------------------------


def _closes_short_cycle_symmetric(b: GraphBuilder, orb: EdgeOrbit, g: int) -> bool:
    # valid when the graph is a union of orbits: any short cycle through an
    # orbit edge has a shifted copy through the first one
    u, v = orb.edges[0]
    return distance_at_most(b.adj, u, v, g - 2)


def add_orbit_if_girth_safe(b: GraphBuilder, orb: EdgeOrbit, g: int, symmetric: bool = True) -> bool:
    """Add ``orb``; undo and return False if a cycle shorter than ``g`` appears.

    ``symmetric=True`` requires ``b`` to be a union of orbits and checks one
    representative edge; otherwise each edge is checked as it is inserted.
    """
    if symmetric:
        for u, v in orb.edges:
            b.add_edge(u, v)
        if _closes_short_cycle_symmetric(b, orb, g):
            for u, v in orb.edges:
                b.remove_edge(u, v)
            return False
        return True
    added = []
    for u, v in orb.edges:
        b.add_edge(u, v)
        added.append((u, v))
        if edge_closes_short_cycle(b, u, v, g):
            for x, y in added:
                b.remove_edge(x, y)
            return False
    return True


def orbit_is_safe(b: GraphBuilder, orb: EdgeOrbit, g: int) -> bool:
    if add_orbit_if_girth_safe(b, orb, g):
        for u, v in orb.edges:
            b.remove_edge(u, v)
        return True
    return False


def new_cycles_through_orbit(b: GraphBuilder, orb: EdgeOrbit, length: int) -> int:
    """Cycles of ``length`` vertices created by adding ``orb`` to the symmetric ``b``.

    Cycles through the representative edge are enumerated; a cycle meeting
    the orbit in m edges has |orb| shifted images counted m times in total,
    so each contributes |orb|/m.
    """
    for u, v in orb.edges:
        b.add_edge(u, v)
    try:
        mult = _cycles_through_edge_by_orbit_hits(b.adj, orb, length)
    finally:
        for u, v in orb.edges:
            b.remove_edge(u, v)
    total = sum(Fraction(len(orb) * c, m) for m, c in mult.items())
    assert total.denominator == 1
    return int(total)


def _cycles_through_edge_by_orbit_hits(adj: list[int], orb: EdgeOrbit, length: int) -> dict[int, int]:
    u0, v0 = orb.edges[0]
    members = set(orb.edges)
    n = len(adj)
    rows = list(adj)
    rows[u0] &= ~(1 << v0)
    rows[v0] &= ~(1 << u0)
    steps = length - 1
    # BFS layers towards u0 for pruning
    dist = [n + 1] * n
    dist[u0] = 0
    frontier = seen = 1 << u0
    d = 0
    while frontier and d < steps:
        d += 1
        nxt = 0
        for x in iter_bits(frontier):
            nxt |= rows[x]
        nxt &= ~seen
        for x in iter_bits(nxt):
            dist[x] = d
        seen |= nxt
        frontier = nxt
    hits: dict[int, int] = {}
    if dist[v0] > steps:
        return hits

    def rec(cur: int, left: int, used: int, m: int) -> None:
        if left == 1:
            if (rows[cur] >> u0) & 1:
                mm = m + ((min(cur, u0), max(cur, u0)) in members)
                hits[mm] = hits.get(mm, 0) + 1
            return
        for w in iter_bits(rows[cur] & ~used):
            if w != u0 and dist[w] < left:
                rec(w, left - 1, used | (1 << w), m + ((min(cur, w), max(cur, w)) in members))

    rec(v0, steps, (1 << v0) | (1 << u0), 1)
    return hits


def best_orbits(olist: Sequence[EdgeOrbit], b: GraphBuilder, g: int) -> list[EdgeOrbit]:
    """Orbits from ``olist`` creating the most new cycles of length g+1 (ties kept)."""
    best: list[EdgeOrbit] = []
    top = -1
    for orb in olist:
        c = new_cycles_through_orbit(b, orb, g + 1)
        if c > top:
            top, best = c, [orb]
        elif c == top:
            best.append(orb)
    return best


def update_orbits(old: Sequence[EdgeOrbit], new: EdgeOrbit, b: GraphBuilder, g: int) -> list[EdgeOrbit]:
    """Orbits of ``old`` (minus ``new``) still addable after ``new`` went in.

    A short cycle through an orbit ``o`` and a new edge has an arc of at most
    g-3 edges, free of ``o``, joining an endpoint of ``o`` to an endpoint of
    ``new``; orbits with no endpoint that close are kept without re-testing.
    """
    ends = 0
    for u, v in new.edges:
        ends |= (1 << u) | (1 << v)
    near = ends
    frontier = ends
    for _ in range(max(g - 3, 0)):
        nxt = 0
        for x in iter_bits(frontier):
            nxt |= b.adj[x]
        nxt &= ~near
        if not nxt:
            break
        near |= nxt
        frontier = nxt
    out = []
    for o in old:
        if o.key == new.key:
            continue
        touches = any((near >> x) & 1 or (near >> y) & 1 for x, y in o.edges)
        if not touches or orbit_is_safe(b, o, g):
            out.append(o)
    return out


# -- searches -------------------------------------------------------------


@dataclass(frozen=True)
class SearchBudget:
    max_outer_iterations: int | None = None
    wall_clock: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_outer_iterations is None and self.wall_clock is None:
            raise ValueError("set max_outer_iterations or wall_clock")


@dataclass
class Candidate:
    graph: Graph
    scheme: LcfScheme
    iteration: int
    seed: int


@dataclass
class SearchStats:
    iterations: int = 0
    screened: int = 0
    early_restarts: int = 0
    elapsed: float = 0.0
    final_sizes: list[int] = field(default_factory=list)


@dataclass
class EvenGirthHeuristics:
    random_pick_fraction: float = 0.25
    # None: half the mean final edge count of earlier builds
    early_odd_cycle_edge_threshold: int | None = None


def _screen(k, G, rng, colour_kwargs) -> bool:
    """True when the randomised colouring fails, i.e. G is a candidate."""
    return random_colourable(k, G, seed=rng.getrandbits(31), **colour_kwargs) is None


def _budget_left(budget: SearchBudget, it: int, t0: float) -> bool:
    if budget.max_outer_iterations is not None and it >= budget.max_outer_iterations:
        return False
    if budget.wall_clock is not None and time.perf_counter() - t0 >= budget.wall_clock:
        return False
    return True


def _initial_safe(r: int, s: int, g: int) -> list[EdgeOrbit]:
    b = GraphBuilder(r * s)
    return [o for o in get_orbits(r, s) if orbit_is_safe(b, o, g)]


def basic_search(
    g: int, r: int, s: int, k: int = 3, budget: SearchBudget = SearchBudget(max_outer_iterations=1000),
    *, stats: SearchStats | None = None, colour_kwargs: dict | None = None,
) -> Candidate | None:
    """Shuffle orbits, add greedily while girth stays >= g, keep uncolourable results."""
    stats = stats if stats is not None else SearchStats()
    colour_kwargs = colour_kwargs or {}
    rng = random.Random(budget.seed)
    olist = get_orbits(r, s)
    t0 = time.perf_counter()
    it = 0
    while _budget_left(budget, it, t0):
        it += 1
        rng.shuffle(olist)
        b = GraphBuilder(r * s)
        placed = [o for o in olist if add_orbit_if_girth_safe(b, o, g)]
        G = b.freeze()
        stats.screened += 1
        stats.final_sizes.append(G.size)
        hit = _screen(k, G, rng, colour_kwargs)
        log.debug("basic seed=%d iter=%d edges=%d candidate=%s", budget.seed, it, G.size, hit)
        if hit:
            stats.iterations, stats.elapsed = it, time.perf_counter() - t0
            return Candidate(G, LcfScheme.from_orbits(r, s, placed), it, budget.seed)
    stats.iterations, stats.elapsed = it, time.perf_counter() - t0
    return None


def even_girth_search(
    g: int, r: int, s: int, k: int = 3,
    budget: SearchBudget = SearchBudget(max_outer_iterations=100),
    heuristics: EvenGirthHeuristics | None = None,
    *, stats: SearchStats | None = None, colour_kwargs: dict | None = None,
) -> Candidate | None:
    """Greedy orbit placement favouring new (g+1)-cycles, with random picks and
    an early restart when no odd cycle has appeared by the edge threshold."""
    h = heuristics or EvenGirthHeuristics()
    stats = stats if stats is not None else SearchStats()
    colour_kwargs = colour_kwargs or {}
    rng = random.Random(budget.seed)
    olist = _initial_safe(r, s, g)
    t0 = time.perf_counter()
    it = 0
    while _budget_left(budget, it, t0):
        it += 1
        threshold = h.early_odd_cycle_edge_threshold
        if threshold is None and stats.final_sizes:
            threshold = sum(stats.final_sizes) // (2 * len(stats.final_sizes))
        b = GraphBuilder(r * s)
        size = 0
        placed: list[EdgeOrbit] = []
        tmp = list(olist)
        checked = False
        restarted = False
        while tmp:
            if rng.random() < h.random_pick_fraction:
                orb = rng.choice(tmp)
            else:
                orb = rng.choice(best_orbits(tmp, b, g))
            for u, v in orb.edges:
                b.add_edge(u, v)
            size += len(orb)
            placed.append(orb)
            tmp = update_orbits(tmp, orb, b, g)
            if threshold is not None and not checked and size >= threshold:
                checked = True
                if not contains_odd_cycle(b):
                    restarted = True
                    break
        if restarted:
            stats.early_restarts += 1
            log.debug("even seed=%d iter=%d early restart at %d edges", budget.seed, it, size)
            continue
        G = b.freeze()
        stats.screened += 1
        stats.final_sizes.append(G.size)
        hit = _screen(k, G, rng, colour_kwargs)
        log.debug("even seed=%d iter=%d edges=%d candidate=%s", budget.seed, it, G.size, hit)
        if hit:
            stats.iterations, stats.elapsed = it, time.perf_counter() - t0
            return Candidate(G, LcfScheme.from_orbits(r, s, placed), it, budget.seed)
    stats.iterations, stats.elapsed = it, time.perf_counter() - t0
    return None


EXHAUSTIVE_MAX_ORDER = 24


def maximal_girth_safe_sets(g: int, r: int, s: int) -> Iterator[list[EdgeOrbit]]:
    """Every inclusion-maximal set of orbits whose union has girth >= g."""
    if r * s > EXHAUSTIVE_MAX_ORDER:
        raise LcfError(f"exhaustive enumeration is capped at order {EXHAUSTIVE_MAX_ORDER}")
    olist = _initial_safe(r, s, g)
    b = GraphBuilder(r * s)
    chosen: list[EdgeOrbit] = []

    def rec(i: int) -> Iterator[list[EdgeOrbit]]:
        if i == len(olist):
            if all(not orbit_is_safe(b, o, g) for o in olist if o not in chosen):
                yield list(chosen)
            return
        o = olist[i]
        if add_orbit_if_girth_safe(b, o, g):
            chosen.append(o)
            yield from rec(i + 1)
            chosen.pop()
            for u, v in o.edges:
                b.remove_edge(u, v)
        yield from rec(i + 1)

    yield from rec(0)


def exhaustive_search(
    g: int, r: int, s: int, k: int = 3, *, seed: int = 0, colour_kwargs: dict | None = None,
) -> Iterator[Candidate]:
    """All maximal girth-safe LCF(r, s) graphs that the randomised colouring fails on."""
    rng = random.Random(seed)
    colour_kwargs = colour_kwargs or {}
    for i, chosen in enumerate(maximal_girth_safe_sets(g, r, s)):
        scheme = LcfScheme.from_orbits(r, s, chosen)
        G = realize(scheme)
        if _screen(k, G, rng, colour_kwargs):
            yield Candidate(G, scheme, i, seed)


def random_scheme(r: int, s: int, rng: random.Random, density: float = 0.3) -> LcfScheme:
    orbits = [o for o in get_orbits(r, s) if rng.random() < density]
    return LcfScheme.from_orbits(r, s, orbits)


ALGORITHMS: dict[str, Callable[..., "Candidate | None"]] = {
    "basic": basic_search,
    "even": even_girth_search,
}
