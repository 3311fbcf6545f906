"""Mycielski's construction, Droogendijk's procedure and local edge moves."""

from __future__ import annotations

import enum
import random
import time
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .coloring import (
    UNLIMITED,
    ColorBudget,
    PaletteConstraint,
    decide_k_colorable,
    random_colourable,
)
from .graph import Graph, GraphBuilder, edge_closes_short_cycle, is_independent, iter_bits


class SNotIndependent(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


def mycielski(G: Graph) -> Graph:
    """Mycielskian on 2n+1 vertices: shadows n..2n-1, apex 2n."""
    n = G.order
    b = GraphBuilder(2 * n + 1)
    for u, v in G.edges():
        b.add_edge(u, v)
        b.add_edge(u, n + v)
        b.add_edge(n + u, v)
    for i in range(n):
        b.add_edge(n + i, 2 * n)
    return b.freeze()


@dataclass(frozen=True)
class DroogendijkParts:
    S: tuple[int, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]
    a_prime: dict[int, int]
    b_prime: dict[int, int]
    alpha: int
    beta: int

    @property
    def order(self) -> int:
        return self.beta + 1


def droogendijk_parts(G: Graph, S: Iterable[int]) -> DroogendijkParts:
    """Split V into S, its neighbourhood A and the rest B; number the copies.

    New vertices follow the originals: A' (ascending A), B' (ascending B),
    then alpha, then beta.
    """
    S = tuple(sorted(set(S)))
    n = G.order
    if any(not 0 <= v < n for v in S):
        raise ValueError("S contains a vertex outside the graph")
    if not is_independent(G, S):
        raise SNotIndependent(f"{S} is not an independent set")
    s_mask = sum(1 << v for v in S)
    a_mask = 0
    for v in S:
        a_mask |= G.adj(v)
    a_mask &= ~s_mask
    A = tuple(iter_bits(a_mask))
    B = tuple(v for v in range(n) if not (s_mask | a_mask) >> v & 1)
    a_prime = {a: n + i for i, a in enumerate(A)}
    b_prime = {b: n + len(A) + i for i, b in enumerate(B)}
    alpha = n + len(A) + len(B)
    return DroogendijkParts(S, A, B, a_prime, b_prime, alpha, alpha + 1)


def droogendijk_construct(G: Graph, S: Iterable[int]) -> Graph:
    p = droogendijk_parts(G, S)
    b = GraphBuilder(p.order)
    for u, v in G.edges():
        b.add_edge(u, v)
    for x, xp in (*p.a_prime.items(), *p.b_prime.items()):
        for w in iter_bits(G.adj(x)):
            b.add_edge(xp, w)
    for v in p.S:
        b.add_edge(p.alpha, v)
    for bp in p.b_prime.values():
        b.add_edge(p.alpha, bp)
        b.add_edge(p.beta, bp)
    for ap in p.a_prime.values():
        b.add_edge(p.beta, ap)
    return b.freeze()


def droogendijk_condition_holds(G: Graph, S: Iterable[int], k: int, budget: ColorBudget = UNLIMITED) -> bool:
    """True iff no (k-2)-colouring of B extends to a (k-1)-colouring of G - S.

    Decided as one constrained search on G - S: B may use colours 0..k-3,
    A any of 0..k-2. With B empty this asks whether G - S is (k-1)-colourable.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    p = droogendijk_parts(G, S)
    if k == 2:
        # no 0-colouring of a nonempty B exists; empty B leaves G - S = A
        return bool(p.B) or G.induced(p.A).size > 0
    rest = sorted(p.A + p.B)
    if not rest:
        # the empty colouring extends
        return False
    H = G.induced(rest)
    in_b = set(p.B)
    small = (1 << (k - 2)) - 1
    full = (1 << (k - 1)) - 1
    constraint = PaletteConstraint(k - 1, tuple(small if v in in_b else full for v in rest))
    d = decide_k_colorable(H, k - 1, constraint, budget)
    if d.exhausted:
        raise BudgetExhausted(f"condition check for S={p.S} ran out of budget")
    return d.refuted


class CandidateVerdict(enum.Enum):
    CONFIRMED = "chromatic number k+1"
    REFUTED = "k-colourable"
    INDETERMINATE = "undecided"


@dataclass(frozen=True)
class QualifyingSet:
    S: tuple[int, ...]
    graph: Graph
    verdict: CandidateVerdict


@dataclass(frozen=True)
class StreamExhausted:
    """Final stream item when the budget ran out."""

    reason: str


def independent_sets(G: Graph, max_size: int, *, skip_b_empty: bool = False) -> Iterator[tuple[int, ...]]:
    """Independent sets by size, then lexicographically."""
    n = G.order
    full = (1 << n) - 1
    for size in range(1, max_size + 1):
        for S in combinations(range(n), size):
            if not is_independent(G, S):
                continue
            if skip_b_empty:
                closed = 0
                for v in S:
                    closed |= G.adj(v) | (1 << v)
                if closed == full:
                    continue
            yield S


def search_qualifying_sets(
    G: Graph,
    k: int,
    max_set_size: int,
    budget: ColorBudget = UNLIMITED,
    *,
    seed: int = 0,
    skip_b_empty: bool = False,
    wall_clock: float | None = None,
    verify: bool = True,
) -> Iterator[QualifyingSet | StreamExhausted]:
    """Construct G* for each independent S passing the condition and classify it.

    Each G* is screened by the randomised k-colouring (success proves
    chi <= k). Survivors are settled exactly when ``verify`` is set.
    ``budget`` applies per exact decision, ``wall_clock`` to the whole stream.
    """
    rng = random.Random(seed)
    t0 = time.perf_counter()
    for S in independent_sets(G, max_set_size, skip_b_empty=skip_b_empty):
        if wall_clock is not None and time.perf_counter() - t0 >= wall_clock:
            yield StreamExhausted(f"wall clock {wall_clock}s reached before S={S}")
            return
        try:
            if not droogendijk_condition_holds(G, S, k, budget):
                continue
        except BudgetExhausted as exc:
            yield StreamExhausted(str(exc))
            return
        H = droogendijk_construct(G, S)
        if random_colourable(k, H, seed=rng.getrandbits(31)) is not None:
            yield QualifyingSet(S, H, CandidateVerdict.REFUTED)
            continue
        if not verify:
            yield QualifyingSet(S, H, CandidateVerdict.INDETERMINATE)
            continue
        d = decide_k_colorable(H, k, budget=budget)
        if d.colorable:
            verdict = CandidateVerdict.REFUTED
        elif d.refuted:
            verdict = CandidateVerdict.CONFIRMED
        else:
            verdict = CandidateVerdict.INDETERMINATE
        yield QualifyingSet(S, H, verdict)


def edge_set_key(G: Graph) -> int:
    """Hash of the labelled edge set."""
    return hash(G.adjacency)


def explore_edge_perturbations(
    G: Graph,
    k: int,
    g_min: int,
    depth: int,
    budget: ColorBudget = UNLIMITED,
    *,
    seed: int = 0,
    max_graphs: int | None = None,
) -> Iterator[Graph | StreamExhausted]:
    """Graphs reachable by up to ``depth`` single-edge additions or removals that
    keep girth >= g_min and chromatic number exactly k.

    ``G`` itself is emitted first. Additions cannot lower chi, so a k-colouring
    confirms them; removals cannot raise chi, so a refuted (k-1)-colouring
    confirms them. The randomised colouring screens before any exact call.
    """
    rng = random.Random(seed)
    seen = {edge_set_key(G)}
    queue = deque([(G, 0)])
    emitted = 0
    yield G
    emitted += 1
    while queue:
        H, d = queue.popleft()
        if d >= depth:
            continue
        for child in _neighbours(H, g_min):
            key = edge_set_key(child)
            if key in seen:
                continue
            seen.add(key)
            added = child.size > H.size
            try:
                keep = _keeps_chromatic(child, k, added, budget, rng)
            except BudgetExhausted as exc:
                yield StreamExhausted(str(exc))
                return
            if not keep:
                continue
            yield child
            emitted += 1
            if max_graphs is not None and emitted >= max_graphs:
                return
            queue.append((child, d + 1))


def _neighbours(H: Graph, g_min: int) -> Iterator[Graph]:
    n = H.order
    for u in range(n):
        for v in range(u + 1, n):
            b = H.builder()
            if H.has_edge(u, v):
                b.remove_edge(u, v)
                yield b.freeze()
            elif not edge_closes_short_cycle(H, u, v, g_min):
                b.add_edge(u, v)
                yield b.freeze()


def _keeps_chromatic(H: Graph, k: int, added: bool, budget: ColorBudget, rng: random.Random) -> bool:
    if added:
        if random_colourable(k, H, seed=rng.getrandbits(31)) is not None:
            return True
        d = decide_k_colorable(H, k, budget=budget)
        if d.exhausted:
            raise BudgetExhausted("exact k-colourability check ran out of budget")
        return d.colorable
    if k >= 2 and random_colourable(k - 1, H, seed=rng.getrandbits(31)) is not None:
        return False
    d = decide_k_colorable(H, k - 1, budget=budget) if k >= 2 else None
    if d is None:
        return False
    if d.exhausted:
        raise BudgetExhausted("exact (k-1)-colourability check ran out of budget")
    return d.refuted


def grotzsch_graph() -> Graph:
    from .graph import cycle_graph

    return mycielski(cycle_graph(5))
