"""Simple undirected graphs on vertices 0..n-1 with bitset adjacency.

Each vertex's neighbourhood is a Python int used as a bitset, so membership
and neighbourhood intersection are single big-int operations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph. ``adj[v]`` is the neighbour bitset of ``v``."""

    __slots__ = ("_n", "_adj", "_hash")

    def __init__(self, order: int, adjacency: Sequence[int]):
        if order < 0:
            raise GraphError("order must be non-negative")
        if len(adjacency) != order:
            raise GraphError(f"expected {order} adjacency rows, got {len(adjacency)}")
        full = (1 << order) - 1
        adj = tuple(int(a) for a in adjacency)
        for v, a in enumerate(adj):
            if a & ~full:
                raise GraphError(f"vertex {v} has a neighbour index >= {order}")
            if (a >> v) & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for w in iter_bits(a):
                if not (adj[w] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")
        self._n = order
        self._adj = adj
        self._hash: int | None = None

    @classmethod
    def _trusted(cls, order: int, adjacency: tuple[int, ...]) -> Graph:
        g = object.__new__(cls)
        g._n = order
        g._adj = adjacency
        g._hash = None
        return g

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        b = GraphBuilder(order)
        for u, v in edges:
            b.add_edge(u, v)
        return b.freeze()

    @classmethod
    def empty(cls, order: int) -> Graph:
        return cls._trusted(order, (0,) * order)

    @property
    def order(self) -> int:
        return self._n

    @property
    def adjacency(self) -> tuple[int, ...]:
        return self._adj

    def __len__(self) -> int:
        return self._n

    def adj(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, a in enumerate(self._adj):
            for v in iter_bits(a >> (u + 1)):
                yield u, u + 1 + v

    @property
    def size(self) -> int:
        return sum(a.bit_count() for a in self._adj) // 2

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def delete_vertex(self, v: int) -> Graph:
        """Graph with ``v`` removed; vertices above ``v`` shift down by one."""
        low = (1 << v) - 1
        rows = []
        for u, a in enumerate(self._adj):
            if u == v:
                continue
            rows.append((a & low) | ((a >> (v + 1)) << v))
        return Graph._trusted(self._n - 1, tuple(rows))

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled in ascending order of ``vertices``."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        keep = sum(1 << v for v in vs)
        rows = []
        for v in vs:
            rows.append(sum(1 << index[w] for w in iter_bits(self._adj[v] & keep)))
        return Graph._trusted(len(vs), tuple(rows))

    def builder(self) -> GraphBuilder:
        return GraphBuilder(self._n, self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(order={self._n}, size={self.size})"


class GraphBuilder:
    """Mutable companion of :class:`Graph`, owned by a single search worker."""

    __slots__ = ("order", "adj")

    def __init__(self, order: int, adjacency: Sequence[int] | None = None):
        self.order = order
        self.adj = list(adjacency) if adjacency is not None else [0] * order

    def _check(self, u: int, v: int) -> None:
        if not (0 <= u < self.order and 0 <= v < self.order):
            raise GraphError(f"edge ({u}, {v}) out of range for order {self.order}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")

    def add_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u

    def remove_edge(self, u: int, v: int) -> None:
        self.adj[u] &= ~(1 << v)
        self.adj[v] &= ~(1 << u)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    @property
    def size(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def freeze(self) -> Graph:
        return Graph._trusted(self.order, tuple(self.adj))


# -- structural queries ------------------------------------------------------


@dataclass(frozen=True)
class Girth:
    """Girth of a graph; ``length`` is None for forests."""

    length: int | None

    @property
    def acyclic(self) -> bool:
        return self.length is None

    def at_least(self, g: int) -> bool:
        return self.length is None or self.length >= g

    def __str__(self) -> str:
        return "acyclic" if self.length is None else str(self.length)


ACYCLIC = Girth(None)


def _adj_rows(G: Graph | GraphBuilder) -> Sequence[int]:
    return G.adjacency if isinstance(G, Graph) else G.adj


def _shortest_cycle_through(adj: Sequence[int], root: int, cap: int) -> int:
    """Shortest cycle found by BFS from ``root``; returns ``cap`` if none shorter.

    Minimising over all roots gives the exact girth.
    """
    dist = {root: 0}
    parent = {root: -1}
    queue = deque([root])
    best = cap
    while queue:
        u = queue.popleft()
        du = dist[u]
        if 2 * du + 1 >= best:
            break
        for w in iter_bits(adj[u]):
            if w == parent[u]:
                continue
            dw = dist.get(w)
            if dw is None:
                dist[w] = du + 1
                parent[w] = u
                queue.append(w)
            else:
                best = min(best, du + dw + 1)
    return best


def girth(G: Graph | GraphBuilder) -> Girth:
    adj = _adj_rows(G)
    n = len(adj)
    best = n + 1
    for v in range(n):
        if adj[v]:
            best = _shortest_cycle_through(adj, v, best)
            if best == 3:
                break
    return ACYCLIC if best > n else Girth(best)


def contains_cycle_shorter_than(G: Graph | GraphBuilder, g: int) -> bool:
    if g < 3:
        raise ValueError("g must be at least 3")
    adj = _adj_rows(G)
    for v in range(len(adj)):
        if adj[v] and _shortest_cycle_through(adj, v, g) < g:
            return True
    return False


def distance_at_most(adj: Sequence[int], u: int, v: int, limit: int) -> bool:
    """True iff some u-v path avoiding the edge uv has at most ``limit`` edges.

    Bidirectional frontier expansion over bitsets.
    """
    if u == v:
        return True
    bit_u, bit_v = 1 << u, 1 << v
    seen_u, seen_v = bit_u, bit_v
    front_u, front_v = bit_u, bit_v
    for _ in range(limit):
        grow_u = front_u.bit_count() <= front_v.bit_count()
        front = front_u if grow_u else front_v
        nxt = 0
        for x in iter_bits(front):
            nxt |= adj[x]
        if front == bit_u:
            nxt &= ~bit_v
        elif front == bit_v:
            nxt &= ~bit_u
        if grow_u:
            nxt &= ~seen_u
            if nxt & seen_v:
                return True
            seen_u |= nxt
            front_u = nxt
        else:
            nxt &= ~seen_v
            if nxt & seen_u:
                return True
            seen_v |= nxt
            front_v = nxt
        if not nxt:
            return False
    return False


def edge_closes_short_cycle(G: Graph | GraphBuilder, u: int, v: int, g: int) -> bool:
    """Incremental check: would (or does) edge uv lie on a cycle shorter than ``g``?

    Valid when the graph without uv has no cycle shorter than ``g``; then the
    graph with uv has one iff dist(u, v) avoiding uv is at most ``g - 2``.
    """
    return distance_at_most(_adj_rows(G), u, v, g - 2)


def contains_odd_cycle(G: Graph | GraphBuilder) -> bool:
    return two_coloring(G) is None


def two_coloring(G: Graph | GraphBuilder) -> list[int] | None:
    """Proper 2-colouring by BFS per component, or None if the graph is not bipartite."""
    adj = _adj_rows(G)
    n = len(adj)
    side = [-1] * n
    for s in range(n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in iter_bits(adj[u]):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return side


def count_cycles_of_length(
    G: Graph | GraphBuilder,
    length: int,
    through: Iterable[tuple[int, int]] | None = None,
) -> int:
    """Number of distinct cycles of exactly ``length`` vertices.

    With ``through``, only cycles using at least one of those edges count.
    """
    if length < 3:
        raise ValueError("cycle length must be at least 3")
    adj = list(_adj_rows(G))
    if through is None:
        return _count_all_cycles(adj, length)
    total = 0
    # cycles through e_i avoiding e_0..e_{i-1} partition the restricted set
    for u, v in dict.fromkeys((min(e), max(e)) for e in through):
        if not (adj[u] >> v) & 1:
            continue
        total += count_paths(adj, v, u, length - 1, exclude_edge=(u, v))
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return total


def _count_all_cycles(adj: Sequence[int], length: int) -> int:
    n = len(adj)
    total = 0
    for start in range(n):
        allowed = ~((1 << (start + 1)) - 1)
        # ordered second/last neighbour pair fixes the direction
        total += _walk(adj, start, start, length - 1, 1 << start, allowed, first=True)
    return total


def _walk(adj, start, cur, remaining, used, allowed, first=False, second=-1):
    if remaining == 0:
        return 1 if (adj[cur] >> start) & 1 and cur > second else 0
    count = 0
    cand = adj[cur] & allowed & ~used
    for w in iter_bits(cand):
        count += _walk(adj, start, w, remaining - 1, used | (1 << w), allowed,
                       second=w if first else second)
    return count


def count_paths(
    adj: Sequence[int],
    src: int,
    dst: int,
    edges: int,
    exclude_edge: tuple[int, int] | None = None,
) -> int:
    """Count simple paths from ``src`` to ``dst`` with exactly ``edges`` edges."""
    n = len(adj)
    rows = list(adj)
    if exclude_edge is not None:
        a, b = exclude_edge
        rows[a] &= ~(1 << b)
        rows[b] &= ~(1 << a)
    # distance-to-dst layers prune branches that cannot arrive in time
    dist = [n + 1] * n
    dist[dst] = 0
    frontier = 1 << dst
    seen = frontier
    d = 0
    while frontier and d < edges:
        d += 1
        nxt = 0
        for x in iter_bits(frontier):
            nxt |= rows[x]
        nxt &= ~seen
        for x in iter_bits(nxt):
            dist[x] = d
        seen |= nxt
        frontier = nxt
    if dist[src] > edges:
        return 0

    def rec(cur: int, left: int, used: int) -> int:
        if left == 1:
            return 1 if (rows[cur] >> dst) & 1 else 0
        total = 0
        for w in iter_bits(rows[cur] & ~used):
            if w != dst and dist[w] < left:
                total += rec(w, left - 1, used | (1 << w))
        return total

    return rec(src, edges, (1 << src) | (1 << dst)) if edges >= 1 else 0


@dataclass(frozen=True)
class DegreeSummary:
    min_degree: int
    max_degree: int

    @property
    def is_regular(self) -> bool:
        return self.min_degree == self.max_degree


def degree_summary(G: Graph | GraphBuilder) -> DegreeSummary:
    adj = _adj_rows(G)
    if not adj:
        return DegreeSummary(0, 0)
    degs = [a.bit_count() for a in adj]
    return DegreeSummary(min(degs), max(degs))


def is_independent(G: Graph, vertices: Iterable[int]) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all(not (G.adj(v) & mask) for v in iter_bits(mask))


def is_triangle_free(G: Graph) -> bool:
    adj = G.adjacency
    return not any(adj[u] & adj[v] for u, v in G.edges())


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << v) for v in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
