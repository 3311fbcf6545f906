"""graph6 and adjacency-list codecs."""

from __future__ import annotations

import re

from .graph import Graph, GraphBuilder, iter_bits

GRAPH6_HEADER = ">>graph6<<"


class FormatError(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


# -- graph6 ------------------------------------------------------------------


def _encode_order(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def encode_graph6(G: Graph) -> str:
    n = G.order
    out = [_encode_order(n)]
    adj = G.adjacency
    acc = 0
    nbits = 0
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def _sixbits(text: str, pos: int) -> int:
    c = ord(text[pos])
    if not 63 <= c <= 126:
        raise FormatError(f"invalid graph6 character {text[pos]!r}", pos)
    return c - 63


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        s = s[base:]
    if not s:
        raise FormatError("empty graph6 string", base)
    if s[0] == ":" or s[0] == ";":
        raise FormatError("sparse6/incremental graph6 is not supported", base)
    pos = 0
    if s[0] != "~":
        n = _sixbits(s, 0)
        pos = 1
    elif len(s) > 1 and s[1] == "~":
        if len(s) < 8:
            raise FormatError("truncated order field", base + len(s))
        n = 0
        for p in range(2, 8):
            n = (n << 6) | _sixbits(s, p)
        pos = 8
    else:
        if len(s) < 4:
            raise FormatError("truncated order field", base + len(s))
        n = 0
        for p in range(1, 4):
            n = (n << 6) | _sixbits(s, p)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != need:
        raise FormatError(
            f"expected {need} data bytes for order {n}, found {len(body)}",
            base + pos + min(len(body), need),
        )
    rows = [0] * n
    bit = 0
    i, j = 0, 1
    for k in range(need):
        chunk = _sixbits(s, pos + k)
        for shift in range(5, -1, -1):
            if bit >= nbits:
                if (chunk >> shift) & 1:
                    raise FormatError("nonzero padding bits", base + pos + k)
                continue
            if (chunk >> shift) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph(n, rows)


# -- adjacency lists ---------------------------------------------------------

_ROW = re.compile(r"^(\S+?)\s*:(.*)$")


def parse_adjacency_list(text: str, order: int | None = None) -> Graph:
    """Parse ``v: n1 n2 ...`` rows, symmetrising the edge relation.

    A line that starts with whitespace or carries no ``label:`` prefix continues
    the previous row. ``&`` and ``\\\\`` table separators are ignored. Without
    ``order`` the largest label or neighbour fixes the order.
    """
    rows: dict[int, list[int]] = {}
    current: int | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.replace("\\\\", " ").replace("&", " ")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _ROW.match(line)
        if m and not line[0].isspace():
            label_text, rest = m.group(1), m.group(2)
            try:
                label = int(label_text)
            except ValueError:
                raise FormatError(f"line {lineno}: unknown vertex label {label_text!r}") from None
            if label < 0:
                raise FormatError(f"line {lineno}: negative vertex label {label}")
            if label in rows:
                raise FormatError(f"line {lineno}: duplicate row for vertex {label}")
            rows[label] = []
            current = label
        else:
            if current is None:
                raise FormatError(f"line {lineno}: continuation line before any vertex row")
            rest = line
        for tok in rest.split():
            try:
                rows[current].append(int(tok))
            except ValueError:
                raise FormatError(f"line {lineno}: bad neighbour {tok!r}") from None
    if order is None:
        # vertices named only as neighbours still count
        order = max((max([v, *nbrs]) for v, nbrs in rows.items()), default=-1) + 1
    b = GraphBuilder(order)
    for v, nbrs in rows.items():
        if v >= order:
            raise FormatError(f"vertex label {v} >= declared order {order}")
        for w in nbrs:
            if not 0 <= w < order:
                raise FormatError(f"vertex {v}: neighbour {w} out of range for order {order}")
            if w == v:
                raise FormatError(f"vertex {v}: self-loop")
            b.add_edge(v, w)
    return b.freeze()


def emit_adjacency_list(G: Graph) -> str:
    lines = []
    for v in range(G.order):
        nbrs = " ".join(str(w) for w in iter_bits(G.adj(v)))
        lines.append(f"{v}: {nbrs}".rstrip())
    return "\n".join(lines) + "\n"
