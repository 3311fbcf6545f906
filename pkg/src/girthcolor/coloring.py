"""Exact and heuristic vertex colouring.

The exact kernel is saturation-ordered backtracking (DSATUR) with forward
checking, propagation of forced colours and colour-symmetry breaking. A
second, deliberately naive backtracker is kept for cross-checking verdicts.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .graph import Graph, iter_bits, two_coloring

MAX_COLORS = 62


class Verdict(enum.Enum):
    COLORABLE = "colorable"
    NOT_COLORABLE = "not-colorable"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if any(not 0 <= c < self.k for c in self.colors):
            raise ValueError(f"colour index outside 0..{self.k - 1}")

    def conflicts(self, G: Graph) -> list[tuple[int, int]]:
        return [(u, v) for u, v in G.edges() if self.colors[u] == self.colors[v]]

    def is_proper(self, G: Graph) -> bool:
        return len(self.colors) == G.order and not self.conflicts(G)

    def respects(self, constraint: PaletteConstraint) -> bool:
        return all((constraint.allowed[v] >> c) & 1 for v, c in enumerate(self.colors))

    def to_lines(self) -> str:
        return "".join(f"{v} {c}\n" for v, c in enumerate(self.colors))


@dataclass(frozen=True)
class PaletteConstraint:
    """Per-vertex allowed colour sets, stored as bitmasks over 0..k-1."""

    k: int
    allowed: tuple[int, ...]

    def __post_init__(self) -> None:
        full = (1 << self.k) - 1
        for v, mask in enumerate(self.allowed):
            if not mask & full:
                raise ValueError(f"vertex {v} has an empty palette")
            if mask & ~full:
                raise ValueError(f"vertex {v} allows colours outside 0..{self.k - 1}")

    @classmethod
    def unrestricted(cls, n: int, k: int) -> PaletteConstraint:
        return cls(k, ((1 << k) - 1,) * n)

    @classmethod
    def from_sets(cls, k: int, sets: Sequence[Iterable[int]]) -> PaletteConstraint:
        return cls(k, tuple(sum(1 << c for c in set(s)) for s in sets))

    def is_unrestricted(self) -> bool:
        full = (1 << self.k) - 1
        return all(m == full for m in self.allowed)


@dataclass(frozen=True)
class ColorBudget:
    """Limits for an exact search; both None means unlimited."""

    time_limit: float | None = None
    node_limit: int | None = None

    @property
    def unlimited(self) -> bool:
        return self.time_limit is None and self.node_limit is None


UNLIMITED = ColorBudget()


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    coloring: Coloring | None = None
    nodes: int = 0
    elapsed: float = 0.0

    @property
    def colorable(self) -> bool:
        return self.verdict is Verdict.COLORABLE

    @property
    def refuted(self) -> bool:
        return self.verdict is Verdict.NOT_COLORABLE

    @property
    def exhausted(self) -> bool:
        return self.verdict is Verdict.BUDGET_EXHAUSTED


def to_csr(G: Graph) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(G.order + 1, dtype=np.int32)
    indices: list[int] = []
    for v in range(G.order):
        indices.extend(iter_bits(G.adj(v)))
        indptr[v + 1] = len(indices)
    return indptr, np.asarray(indices, dtype=np.int32)


def greedy_clique(G: Graph) -> list[int]:
    """A maximal clique grown greedily from each vertex; the largest is kept."""
    best: list[int] = []
    for start in range(G.order):
        clique = [start]
        cand = G.adj(start)
        while cand:
            v = max(iter_bits(cand), key=lambda w: (G.adj(w) & cand).bit_count())
            clique.append(v)
            cand &= G.adj(v)
        if len(clique) > len(best):
            best = clique
    return best


def _peel(G: Graph, allowed: Sequence[int]) -> tuple[list[int], list[int]]:
    """Split off vertices that can always be coloured last.

    A vertex with fewer live neighbours than allowed colours is removed
    repeatedly. Returns (core vertices, peeled vertices in removal order).
    """
    n = G.order
    live = (1 << n) - 1
    deg = [G.degree(v) for v in range(n)]
    palette = [m.bit_count() for m in allowed]
    stack = [v for v in range(n) if deg[v] < palette[v]]
    removed = [False] * n
    peeled = []
    while stack:
        v = stack.pop()
        if removed[v]:
            continue
        removed[v] = True
        live &= ~(1 << v)
        peeled.append(v)
        for w in iter_bits(G.adj(v) & live):
            deg[w] -= 1
            if deg[w] < palette[w]:
                stack.append(w)
    core = [v for v in range(n) if not removed[v]]
    return core, peeled


def _extend(G: Graph, colors: list[int], peeled: list[int], allowed: Sequence[int]) -> None:
    for v in reversed(peeled):
        used = 0
        for w in iter_bits(G.adj(v)):
            if colors[w] >= 0:
                used |= 1 << colors[w]
        free = allowed[v] & ~used
        colors[v] = (free & -free).bit_length() - 1


def decide_k_colorable(
    G: Graph,
    k: int,
    constraint: PaletteConstraint | None = None,
    budget: ColorBudget = UNLIMITED,
    *,
    method: str = "dsatur",
    chunk: int = 200_000,
) -> Decision:
    """Decide whether ``G`` has a proper colouring with colours 0..k-1.

    ``method`` is ``"dsatur"`` (default) or ``"plain"``, an independent
    static-order backtracker with forward checking used for cross-checks.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > MAX_COLORS:
        raise ValueError(f"at most {MAX_COLORS} colours are supported")
    t0 = time.perf_counter()
    n = G.order
    if constraint is None:
        allowed: Sequence[int] = ((1 << k) - 1,) * n
        symmetric = True
    else:
        if constraint.k != k or len(constraint.allowed) != n:
            raise ValueError("constraint does not match graph order and k")
        allowed = constraint.allowed
        symmetric = constraint.is_unrestricted()

    def done(verdict: Verdict, colors: list[int] | None = None, nodes: int = 0) -> Decision:
        coloring = Coloring(tuple(colors), k) if colors is not None else None
        return Decision(verdict, coloring, nodes, time.perf_counter() - t0)

    if n == 0:
        return done(Verdict.COLORABLE, [])
    if symmetric and method == "dsatur":
        if k == 1:
            return done(Verdict.NOT_COLORABLE) if G.size else done(Verdict.COLORABLE, [0] * n)
        if k == 2:
            side = two_coloring(G)
            return done(Verdict.NOT_COLORABLE) if side is None else done(Verdict.COLORABLE, side)
        if len(greedy_clique(G)) > k:
            return done(Verdict.NOT_COLORABLE)

    if method == "plain":
        return _decide_plain(G, k, allowed, symmetric, budget, done, chunk, t0)
    if method != "dsatur":
        raise ValueError(f"unknown method {method!r}")

    core, peeled = _peel(G, allowed)
    colors = [-1] * n
    if not core:
        _extend(G, colors, peeled, allowed)
        return done(Verdict.COLORABLE, colors)
    H = G.induced(core)
    indptr, indices = to_csr(H)
    dom = np.array([allowed[v] for v in core], dtype=np.int64)
    st = _kernels.SearchState(H.order, k, dom, symmetric)
    status, nodes = _run_chunks(st, H.order, indptr, indices, budget, chunk, t0)
    if status == _kernels.FOUND:
        for i, v in enumerate(core):
            colors[v] = int(st.col[i])
        _extend(G, colors, peeled, allowed)
        return done(Verdict.COLORABLE, colors, nodes)
    if status == _kernels.EXHAUSTED:
        return done(Verdict.NOT_COLORABLE, nodes=nodes)
    return done(Verdict.BUDGET_EXHAUSTED, nodes=nodes)


def _run_chunks(st, n, indptr, indices, budget, chunk, t0):
    total = 0
    while True:
        limit = chunk
        if budget.node_limit is not None:
            limit = min(limit, budget.node_limit - total)
            if limit <= 0:
                return _kernels.RUNNING, total
        status, nodes = _kernels.dsatur_run(
            n, indptr, indices, st.symmetric, limit,
            st.dom, st.col, st.trail_v, st.trail_dom, st.trail_col,
            st.dec_v, st.dec_rem, st.dec_trail, st.dec_maxused, st.queue, st.scalars,
        )
        total += nodes
        if status != _kernels.RUNNING:
            return status, total
        if budget.time_limit is not None and time.perf_counter() - t0 >= budget.time_limit:
            return _kernels.RUNNING, total


def _decide_plain(G, k, allowed, symmetric, budget, done, chunk, t0):
    n = G.order
    indptr, indices = to_csr(G)
    # BFS order from a maximum-degree vertex keeps constraints local
    order: list[int] = []
    seen = 0
    for root in sorted(range(n), key=lambda v: -G.degree(v)):
        if (seen >> root) & 1:
            continue
        seen |= 1 << root
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(iter_bits(G.adj(v) & ~seen), key=lambda w: -G.degree(w)):
                seen |= 1 << w
                queue.append(w)
    order_arr = np.asarray(order, dtype=np.int32)
    allowed_arr = np.asarray(allowed, dtype=np.int64)
    col = np.full(n, -1, dtype=np.int32)
    nxt = np.zeros(n + 1, dtype=np.int32)
    cnt = np.zeros(n * k, dtype=np.int32)
    mu = np.zeros(n + 1, dtype=np.int32)
    scalars = np.zeros(2, dtype=np.int64)
    total = 0
    while True:
        limit = chunk
        if budget.node_limit is not None:
            limit = min(limit, budget.node_limit - total)
            if limit <= 0:
                return done(Verdict.BUDGET_EXHAUSTED, nodes=total)
        status, nodes = _kernels.static_run(
            n, indptr, indices, order_arr, k, allowed_arr, symmetric, limit, col, nxt, cnt, mu, scalars
        )
        total += nodes
        if status == _kernels.FOUND:
            return done(Verdict.COLORABLE, [int(c) for c in col], total)
        if status == _kernels.EXHAUSTED:
            return done(Verdict.NOT_COLORABLE, nodes=total)
        if budget.time_limit is not None and time.perf_counter() - t0 >= budget.time_limit:
            return done(Verdict.BUDGET_EXHAUSTED, nodes=total)


@dataclass(frozen=True)
class ChromaticResult:
    """Proven interval ``lower <= chi <= upper`` with a witness for ``upper``."""

    lower: int
    upper: int
    coloring: Coloring | None = None

    @property
    def exact(self) -> int | None:
        return self.lower if self.lower == self.upper else None

    def __str__(self) -> str:
        if self.exact is not None:
            return f"Exact({self.exact})"
        return f"Bounds({self.lower}, {self.upper})"


def dsatur_greedy(G: Graph) -> list[int]:
    n = G.order
    colors = [-1] * n
    used = [0] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (used[u].bit_count(), G.degree(u)),
        )
        free = ~used[v]
        c = (free & -free).bit_length() - 1
        colors[v] = c
        for w in iter_bits(G.adj(v)):
            used[w] |= 1 << c
    return colors


def chromatic_number(G: Graph, budget: ColorBudget = UNLIMITED, *, method: str = "dsatur") -> ChromaticResult:
    """Exact chromatic number, or the best proven interval within ``budget``.

    Starting from the greedy upper bound, k is lowered until a decision
    refutes it; the time budget is shared across decisions.
    """
    t0 = time.perf_counter()
    n = G.order
    if n == 0:
        return ChromaticResult(0, 0, Coloring((), 0))
    greedy = dsatur_greedy(G)
    upper = max(greedy) + 1
    best = Coloring(tuple(greedy), upper)
    lower = max(len(greedy_clique(G)), 1 if G.size == 0 else 2)
    while lower < upper:
        k = upper - 1
        remaining = None
        if budget.time_limit is not None:
            remaining = budget.time_limit - (time.perf_counter() - t0)
            if remaining <= 0:
                break
        d = decide_k_colorable(G, k, budget=ColorBudget(remaining, budget.node_limit), method=method)
        if d.colorable:
            assert d.coloring is not None
            best = d.coloring
            upper = k
            used = max(d.coloring.colors) + 1
            if used < upper:
                upper = used
                best = Coloring(d.coloring.colors, used)
        elif d.refuted:
            lower = k + 1
        else:
            break
    return ChromaticResult(lower, upper, best)


def random_colourable(
    k: int,
    G: Graph,
    *,
    seed: int = 0,
    max_iters: int | None = None,
    restarts: int = 3,
    tenure: int = 2,
) -> Coloring | None:
    """Randomised tabu search for a proper k-colouring.

    One-sided: a returned colouring is always proper; None makes no claim.
    ``max_iters`` defaults to ``400 * n`` steps per restart.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = G.order
    if n == 0:
        return Coloring((), k)
    if k == 1:
        return None if G.size else Coloring((0,) * n, 1)
    if max_iters is None:
        max_iters = 400 * n
    indptr, indices = to_csr(G)
    out = np.zeros(n, dtype=np.int32)
    ok = _kernels.tabu_colour(n, indptr, indices, k, seed, max_iters, restarts, tenure, out)
    if not ok:
        return None
    return Coloring(tuple(int(c) for c in out), k)


def is_vertex_critical(
    G: Graph,
    k: int,
    budget: ColorBudget = UNLIMITED,
    *,
    method: str = "dsatur",
    vertices: Iterable[int] | None = None,
) -> bool | None:
    """Whether every single-vertex deletion of the k-chromatic ``G`` is (k-1)-colourable.

    Returns None when some deletion could not be settled within ``budget``
    (time and node limits apply per deletion). ``vertices`` may restrict the
    check to one representative per orbit of a known automorphism group.
    """
    if k <= 1:
        return G.order == k
    indeterminate = False
    for v in range(G.order) if vertices is None else vertices:
        d = decide_k_colorable(G.delete_vertex(v), k - 1, budget=budget, method=method)
        if d.refuted:
            return False
        if d.exhausted:
            indeterminate = True
    return None if indeterminate else True
