"""Isomorph-free generation of small graphs under girth and degree limits.

Graphs grow one vertex at a time (canonical augmentation). A child is kept
only when its new vertex is equivalent to the vertex a canonical labelling
would delete, so each isomorphism class appears exactly once. Girth and
maximum degree are hereditary and prune during augmentation; the minimum
degree prunes by lookahead (each remaining vertex can add at most one).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from .coloring import ColorBudget, Decision, decide_k_colorable
from .graph import Graph, iter_bits

SAFETY_CAP = 11


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class GenerationConstraints:
    max_order: int
    girth_min: int = 3
    min_degree: int = 0
    max_degree: int | None = None
    min_order: int = 1

    def __post_init__(self) -> None:
        if self.girth_min < 3:
            raise ValueError("girth_min must be at least 3")
        if self.min_degree < 0:
            raise ValueError("min_degree must be non-negative")
        if self.max_degree is not None:
            if self.max_degree < self.min_degree:
                raise ValueError("max_degree below min_degree")
            if self.max_degree >= self.max_order:
                object.__setattr__(self, "max_degree", None)

    @property
    def degree_cap(self) -> int:
        return self.max_order - 1 if self.max_degree is None else self.max_degree


# -- canonical labelling ------------------------------------------------------


def _refine(adj: tuple[int, ...], cells: list[int]) -> list[int]:
    """Coarsest equitable refinement of an ordered partition (cells as bitsets).

    Split order depends only on neighbour counts, so the result commutes
    with relabelling.
    """
    cells = list(cells)
    changed = True
    while changed:
        changed = False
        for w in range(len(cells)):
            splitter = cells[w]
            out: list[int] = []
            for cell in cells:
                if cell & (cell - 1) == 0:
                    out.append(cell)
                    continue
                groups: dict[int, int] = {}
                for v in iter_bits(cell):
                    c = (adj[v] & splitter).bit_count()
                    groups[c] = groups.get(c, 0) | (1 << v)
                if len(groups) > 1:
                    changed = True
                    out.extend(groups[c] for c in sorted(groups))
                else:
                    out.append(cell)
            if changed:
                cells = out
                break
    return cells


def _code(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        rows.append(sum(1 << pos[w] for w in iter_bits(adj[v])))
    return tuple(rows)


def canonical_labelling(G: Graph) -> tuple[tuple[int, ...], list[int]]:
    """Canonical code and vertex order (position -> vertex) for a small graph.

    Individualisation-refinement over the first non-singleton cell, keeping
    the lexicographically largest relabelled adjacency. Automorphisms found
    from equal leaves prune equivalent branches.
    """
    adj = G.adjacency
    n = G.order
    if n == 0:
        return (), []
    degrees: dict[int, int] = {}
    for v in range(n):
        d = adj[v].bit_count()
        degrees[d] = degrees.get(d, 0) | (1 << v)
    root = _refine(adj, [degrees[d] for d in sorted(degrees)])

    best_code: tuple[int, ...] | None = None
    best_order: list[int] = []
    first_leaf: tuple[tuple[int, ...], list[int]] | None = None
    first_path: list[int] = []
    autos: list[list[int]] = []

    def orbits_fixing(prefix: list[int], cell: int) -> list[int]:
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in autos:
            if all(g[p] == p for p in prefix):
                for v in range(n):
                    a, b = find(v), find(g[v])
                    if a != b:
                        parent[a] = b
        reps = []
        seen_roots = set()
        for v in iter_bits(cell):
            r = find(v)
            if r not in seen_roots:
                seen_roots.add(r)
                reps.append(v)
        return reps

    def search(cells: list[int], path: list[int]) -> int:
        """Returns a level to unwind to (len(path) means continue normally)."""
        nonlocal best_code, best_order, first_leaf, first_path
        target = next((i for i, c in enumerate(cells) if c & (c - 1)), -1)
        if target < 0:
            order = [c.bit_length() - 1 for c in cells]
            code = _code(adj, order)
            if first_leaf is None:
                first_leaf = (code, order)
                first_path = list(path)
                best_code, best_order = code, order
                return len(path)
            if code == first_leaf[0]:
                autos.append(_perm(first_leaf[1], order, n))
                # whole branch is an image of the first path's branch
                return _diverge(first_path, path)
            if best_code is None or code > best_code:
                best_code, best_order = code, order
            elif code == best_code:
                autos.append(_perm(best_order, order, n))
            return len(path)
        cell = cells[target]
        tried: list[int] = []
        for v in iter_bits(cell):
            if tried:
                reps = orbits_fixing(path, cell)
                if v not in reps or _same_orbit(v, tried, path, n, autos):
                    continue
            tried.append(v)
            child = cells[:target] + [1 << v, cell & ~(1 << v)] + cells[target + 1:]
            level = search(_refine(adj, child), path + [v])
            if level < len(path):
                return level
        return len(path)

    search(root, [])
    assert best_code is not None
    return best_code, best_order


def _perm(src: list[int], dst: list[int], n: int) -> list[int]:
    g = list(range(n))
    for a, b in zip(src, dst):
        g[a] = b
    return g


def _diverge(a: list[int], b: list[int]) -> int:
    i = 0
    while i < len(a) and i < len(b) and a[i] == b[i]:
        i += 1
    return i


def _same_orbit(v: int, tried: list[int], prefix: list[int], n: int, autos: list[list[int]]) -> bool:
    fixing = [g for g in autos if all(g[p] == p for p in prefix)]
    if not fixing:
        return False
    reach = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for g in fixing:
            y = g[x]
            if y not in reach:
                reach.add(y)
                frontier.append(y)
    return any(t in reach for t in tried)


def canonical_form(G: Graph) -> tuple[int, tuple[int, ...]]:
    return G.order, canonical_labelling(G)[0]


def are_isomorphic(G: Graph, H: Graph) -> bool:
    return canonical_form(G) == canonical_form(H)


# -- generation ---------------------------------------------------------------


@dataclass
class GenerationReport:
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _deletion_vertex(G: Graph, order: list[int]) -> int:
    """Vertex removed to reach the canonical parent: among minimum-degree
    vertices, the one placed last by the canonical labelling ``order``."""
    dmin = min(G.degree(v) for v in range(G.order))
    for v in reversed(order):
        if G.degree(v) == dmin:
            return v
    raise AssertionError("unreachable")


def _accept(child: Graph) -> tuple[bool, tuple[int, tuple[int, ...]]]:
    code, order = canonical_labelling(child)
    key = (child.order, code)
    n = child.order - 1
    star = _deletion_vertex(child, order)
    if star == n:
        return True, key
    same = canonical_form(child.delete_vertex(n)) == canonical_form(child.delete_vertex(star))
    return same, key


def _extend(parent: Graph, nbrs: tuple[int, ...]) -> Graph:
    n = parent.order
    rows = list(parent.adjacency)
    mask = 0
    for u in nbrs:
        rows[u] |= 1 << n
        mask |= 1 << u
    rows.append(mask)
    return Graph._trusted(n + 1, tuple(rows))


def _children(parent: Graph, c: GenerationConstraints) -> Iterator[Graph]:
    n = parent.order
    m = n + 1
    degs = [parent.degree(v) for v in range(n)]
    cap = c.degree_cap
    slack = c.max_order - m
    # vertices that may still take a neighbour
    open_vs = [v for v in range(n) if degs[v] < cap]
    seen: set[tuple[int, tuple[int, ...]]] = set()
    dmin_parent = min(degs) if degs else 0
    hi = min(cap, len(open_vs), dmin_parent + 1)
    lo = max(0, c.min_degree - slack)
    for size in range(lo, hi + 1):
        for nbrs in combinations(open_vs, size):
            # the new vertex must have minimum degree in the child
            if any(degs[u] + 1 < size for u in nbrs):
                continue
            if size > dmin_parent and any(degs[v] < size for v in range(n) if v not in nbrs):
                continue
            # lookahead on minimum degree
            nbr_mask = sum(1 << u for u in nbrs)
            if any(degs[v] + ((nbr_mask >> v) & 1) + slack < c.min_degree for v in range(n)):
                continue
            if not _girth_ok(parent, nbrs, c.girth_min):
                continue
            child = _extend(parent, nbrs)
            ok, key = _accept(child)
            if not ok or key in seen:
                continue
            seen.add(key)
            yield child


def _girth_ok(parent: Graph, nbrs: tuple[int, ...], g: int) -> bool:
    if g <= 3 or len(nbrs) < 2:
        return True
    # two neighbours of the new vertex at distance <= g-3 close a cycle < g
    adj = parent.adjacency
    for i, u in enumerate(nbrs):
        for w in nbrs[i + 1:]:
            if (adj[u] >> w) & 1:
                return False
            if g > 4 and _within(adj, u, w, g - 3):
                return False
    return True


def _within(adj, u: int, w: int, limit: int) -> bool:
    seen = frontier = 1 << u
    for _ in range(limit):
        nxt = 0
        for x in iter_bits(frontier):
            nxt |= adj[x]
        nxt &= ~seen
        if (nxt >> w) & 1:
            return True
        if not nxt:
            return False
        seen |= nxt
        frontier = nxt
    return False


def _satisfies(G: Graph, c: GenerationConstraints) -> bool:
    if G.order < c.min_order:
        return False
    return all(c.min_degree <= G.degree(v) <= c.degree_cap for v in range(G.order))


def generate(
    constraints: GenerationConstraints,
    visitor: Callable[[Graph], bool | None] | None = None,
    *,
    cap: int = SAFETY_CAP,
) -> GenerationReport:
    """Visit one graph per isomorphism class meeting ``constraints``.

    A visitor returning True stops the generation early.
    """
    c = constraints
    if c.max_order > cap:
        raise CapExceeded(f"max_order {c.max_order} exceeds safety cap {cap}")
    report = GenerationReport()
    stop = False

    def rec(G: Graph) -> None:
        nonlocal stop
        if _satisfies(G, c):
            report.counts[G.order] = report.counts.get(G.order, 0) + 1
            if visitor is not None and visitor(G):
                stop = True
                return
        if G.order == c.max_order:
            return
        for child in _children(G, c):
            rec(child)
            if stop:
                return

    seed = Graph.empty(1)
    if c.min_degree - (c.max_order - 1) <= 0:
        rec(seed)
    return report


def iter_graphs(constraints: GenerationConstraints, *, cap: int = SAFETY_CAP) -> list[Graph]:
    out: list[Graph] = []
    generate(constraints, out.append, cap=cap)
    return out


@dataclass(frozen=True)
class CertifyResult:
    all_colorable: bool
    counterexample: Graph | None
    visited: int
    decision: Decision | None = None
    indeterminate: int = 0


def certify_all_colorable(
    constraints: GenerationConstraints,
    k: int,
    budget: ColorBudget = ColorBudget(),
    *,
    cap: int = SAFETY_CAP,
) -> CertifyResult:
    """Check every generated graph for k-colourability; stop at the first failure."""
    found: list[tuple[Graph, Decision]] = []
    unknown = 0
    visited = 0

    def visit(G: Graph) -> bool:
        nonlocal unknown, visited
        visited += 1
        d = decide_k_colorable(G, k, budget=budget)
        if d.refuted:
            found.append((G, d))
            return True
        if d.exhausted:
            unknown += 1
        return False

    generate(constraints, visit, cap=cap)
    if found:
        G, d = found[0]
        return CertifyResult(False, G, visited, d, unknown)
    return CertifyResult(unknown == 0, None, visited, None, unknown)
