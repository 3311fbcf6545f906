"""Compiled inner loops for colouring.

Graphs arrive in CSR form (``indptr``, ``indices``). Colour sets are int64
bitmasks, so at most 62 colours are supported.
"""

from __future__ import annotations

import numpy as np
from numba import njit

FOUND = 1
EXHAUSTED = 0
RUNNING = 2


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _lowbit_index(x):
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


class SearchState:
    """Arrays describing a suspended exact search, resumable chunk by chunk."""

    def __init__(self, n: int, k: int, dom: np.ndarray, symmetric: bool):
        cap = n * (k + 2) + 16
        self.dom = dom.astype(np.int64).copy()
        self.col = np.full(n, -1, dtype=np.int32)
        self.trail_v = np.zeros(cap, dtype=np.int32)
        self.trail_dom = np.zeros(cap, dtype=np.int64)
        self.trail_col = np.zeros(cap, dtype=np.int32)
        self.dec_v = np.zeros(n + 1, dtype=np.int32)
        self.dec_rem = np.zeros(n + 1, dtype=np.int64)
        self.dec_trail = np.zeros(n + 1, dtype=np.int32)
        self.dec_maxused = np.zeros(n + 1, dtype=np.int32)
        self.queue = np.zeros(n + 1, dtype=np.int32)
        # scalars: level, mode, trail_len, maxused, uncolored, started
        self.scalars = np.array([-1, 0, 0, -1, n, 0], dtype=np.int64)
        self.k = k
        self.symmetric = symmetric
        self.nodes = 0


@njit(cache=True)
def _undo(to, trail_len, trail_v, trail_dom, trail_col, dom, col):
    restored = 0
    while trail_len > to:
        trail_len -= 1
        v = trail_v[trail_len]
        if col[v] != -1 and trail_col[trail_len] == -1:
            restored += 1
        dom[v] = trail_dom[trail_len]
        col[v] = trail_col[trail_len]
    return trail_len, restored


@njit(cache=True)
def _assign(v, c, indptr, indices, dom, col, trail_v, trail_dom, trail_col,
            trail_len, queue, maxused):
    """Colour v with c and propagate forced colours.

    Returns (ok, trail_len, newly_coloured, maxused).
    """
    coloured = 0
    qh = 0
    qt = 0
    queue[qt] = v
    qt += 1
    # pending colour for queued vertex is its singleton domain, except the root
    trail_v[trail_len] = v
    trail_dom[trail_len] = dom[v]
    trail_col[trail_len] = col[v]
    trail_len += 1
    dom[v] = np.int64(1) << c
    while qh < qt:
        x = queue[qh]
        qh += 1
        cx = _lowbit_index(dom[x])
        if col[x] != -1:
            continue
        col[x] = cx
        coloured += 1
        if cx > maxused:
            maxused = cx
        bit = np.int64(1) << cx
        for p in range(indptr[x], indptr[x + 1]):
            w = indices[p]
            if col[w] != -1:
                if col[w] == cx:
                    return False, trail_len, coloured, maxused
                continue
            dw = dom[w]
            if dw & bit:
                trail_v[trail_len] = w
                trail_dom[trail_len] = dw
                trail_col[trail_len] = col[w]
                trail_len += 1
                dw &= ~bit
                dom[w] = dw
                if dw == 0:
                    return False, trail_len, coloured, maxused
                if dw & (dw - 1) == 0:
                    queue[qt] = w
                    qt += 1
    return True, trail_len, coloured, maxused


@njit(cache=True)
def _select(n, indptr, indices, dom, col):
    best = -1
    best_size = 1 << 30
    best_deg = -1
    for v in range(n):
        if col[v] != -1:
            continue
        s = _popcount(dom[v])
        if s > best_size:
            continue
        if s < best_size:
            best_size = s
            best = v
            best_deg = -1
        d = 0
        for p in range(indptr[v], indptr[v + 1]):
            if col[indices[p]] == -1:
                d += 1
        if d > best_deg:
            best_deg = d
            best = v
    return best


@njit(cache=True)
def dsatur_run(n, indptr, indices, symmetric, node_limit,
               dom, col, trail_v, trail_dom, trail_col,
               dec_v, dec_rem, dec_trail, dec_maxused, queue, scalars):
    """Advance the exact search by up to ``node_limit`` colour assignments.

    Returns (status, nodes) with status FOUND, EXHAUSTED (search space empty:
    not colourable) or RUNNING (limit hit; state preserved in the arrays).
    """
    level = scalars[0]
    mode = scalars[1]  # 0 = select a vertex, 1 = try next colour at level
    trail_len = scalars[2]
    maxused = scalars[3]
    uncoloured = scalars[4]
    nodes = 0

    if scalars[5] == 0:
        scalars[5] = 1
        # initial propagation of singleton domains
        for v in range(n):
            if dom[v] == 0:
                return EXHAUSTED, 0
        for v in range(n):
            if col[v] == -1 and dom[v] & (dom[v] - 1) == 0:
                c = _lowbit_index(dom[v])
                ok, trail_len, done, maxused = _assign(
                    v, c, indptr, indices, dom, col, trail_v, trail_dom,
                    trail_col, trail_len, queue, maxused)
                uncoloured -= done
                if not ok:
                    return EXHAUSTED, 0
        # root trail is never undone
        trail_len = 0
        level = -1
        mode = 0

    while True:
        if mode == 0:
            if uncoloured == 0:
                scalars[0] = level
                scalars[1] = 1
                scalars[2] = trail_len
                scalars[3] = maxused
                scalars[4] = uncoloured
                return FOUND, nodes
            v = _select(n, indptr, indices, dom, col)
            allowed = dom[v]
            if symmetric:
                allowed &= (np.int64(1) << (maxused + 2)) - 1
            level += 1
            dec_v[level] = v
            dec_rem[level] = allowed
            dec_trail[level] = trail_len
            dec_maxused[level] = maxused
            mode = 1
        else:
            if level < 0:
                scalars[0] = level
                scalars[1] = mode
                return EXHAUSTED, nodes
            if nodes >= node_limit:
                scalars[0] = level
                scalars[1] = mode
                scalars[2] = trail_len
                scalars[3] = maxused
                scalars[4] = uncoloured
                return RUNNING, nodes
            trail_len, restored = _undo(dec_trail[level], trail_len, trail_v,
                                        trail_dom, trail_col, dom, col)
            uncoloured += restored
            maxused = dec_maxused[level]
            rem = dec_rem[level]
            if rem == 0:
                level -= 1
                continue
            c = _lowbit_index(rem)
            dec_rem[level] = rem & ~(np.int64(1) << c)
            nodes += 1
            ok, trail_len, done, maxused = _assign(
                dec_v[level], c, indptr, indices, dom, col, trail_v, trail_dom,
                trail_col, trail_len, queue, maxused)
            uncoloured -= done
            if ok:
                mode = 0


@njit(cache=True)
def static_run(n, indptr, indices, order, k, allowed, symmetric, node_limit, col, nxt, cnt, mu, scalars):
    """Static-order backtracking with forward checking, resumable.

    Independent of the DSATUR kernel: a fixed vertex order, per-vertex
    counts of neighbours holding each colour, and a check that no later
    neighbour loses its last colour. With ``symmetric`` a vertex may open at
    most one new colour. ``scalars = [pos, started]``. Returns (status, nodes).
    """
    if scalars[1] == 0:
        for v in range(n):
            col[v] = -1
        for i in range(n * k):
            cnt[i] = 0
        nxt[0] = 0
        mu[0] = -1
        scalars[0] = 0
        scalars[1] = 1
    pos = scalars[0]
    nodes = 0
    while True:
        if pos == n:
            scalars[0] = pos
            return FOUND, nodes
        if pos < 0:
            scalars[0] = pos
            return EXHAUSTED, nodes
        v = order[pos]
        top = k
        if symmetric and mu[pos] + 2 < top:
            top = mu[pos] + 2
        c = nxt[pos]
        placed = False
        while c < top:
            if (allowed[v] >> c) & 1 and cnt[v * k + c] == 0:
                ok = True
                for p in range(indptr[v], indptr[v + 1]):
                    w = indices[p]
                    if col[w] >= 0 or cnt[w * k + c] > 0 or not (allowed[w] >> c) & 1:
                        continue
                    spare = False
                    for d in range(k):
                        if d != c and (allowed[w] >> d) & 1 and cnt[w * k + d] == 0:
                            spare = True
                            break
                    if not spare:
                        ok = False
                        break
                if ok:
                    placed = True
                    break
            c += 1
        if placed:
            if nodes >= node_limit:
                nxt[pos] = c
                scalars[0] = pos
                return RUNNING, nodes
            nodes += 1
            col[v] = c
            for p in range(indptr[v], indptr[v + 1]):
                cnt[indices[p] * k + c] += 1
            nxt[pos] = c + 1
            mu[pos + 1] = mu[pos] if mu[pos] > c else c
            pos += 1
            if pos < n:
                nxt[pos] = 0
        else:
            nxt[pos] = 0
            pos -= 1
            if pos >= 0:
                u = order[pos]
                cu = col[u]
                for p in range(indptr[u], indptr[u + 1]):
                    cnt[indices[p] * k + cu] -= 1
                col[u] = -1


@njit(cache=True)
def tabu_colour(n, indptr, indices, k, seed, max_iters, restarts, tenure_base, out):
    """Tabu min-conflicts search for a proper k-colouring.

    Random start, best non-tabu recolouring of a conflicting vertex each step
    (plateau moves allowed), aspiration on improvement, fresh restart after
    ``max_iters`` steps. Returns True with ``out`` filled on success.
    """
    np.random.seed(seed)
    col = np.zeros(n, dtype=np.int32)
    gamma = np.zeros((n, k), dtype=np.int32)
    tabu = np.zeros((n, k), dtype=np.int64)
    for attempt in range(restarts):
        for v in range(n):
            col[v] = np.random.randint(0, k)
        gamma[:, :] = 0
        tabu[:, :] = 0
        conflicts = 0
        for v in range(n):
            for p in range(indptr[v], indptr[v + 1]):
                gamma[v, col[indices[p]]] += 1
        for v in range(n):
            conflicts += gamma[v, col[v]]
        conflicts //= 2
        best_conf = conflicts
        it = 0
        while conflicts > 0 and it < max_iters:
            it += 1
            best_delta = 1 << 30
            mv = -1
            mc = -1
            ties = 0
            for v in range(n):
                cv = col[v]
                g_cur = gamma[v, cv]
                if g_cur == 0:
                    continue
                for c in range(k):
                    if c == cv:
                        continue
                    delta = gamma[v, c] - g_cur
                    if tabu[v, c] > it and conflicts + delta >= best_conf:
                        continue
                    if delta < best_delta:
                        best_delta = delta
                        mv = v
                        mc = c
                        ties = 1
                    elif delta == best_delta:
                        ties += 1
                        if np.random.randint(0, ties) == 0:
                            mv = v
                            mc = c
            if mv < 0:
                # every move tabu: random conflicting vertex, random colour
                cand = np.random.randint(0, n)
                for off in range(n):
                    v = (cand + off) % n
                    if gamma[v, col[v]] > 0:
                        mv = v
                        break
                mc = (col[mv] + 1 + np.random.randint(0, k - 1)) % k
                best_delta = gamma[mv, mc] - gamma[mv, col[mv]]
            old = col[mv]
            col[mv] = mc
            for p in range(indptr[mv], indptr[mv + 1]):
                w = indices[p]
                gamma[w, old] -= 1
                gamma[w, mc] += 1
            conflicts += best_delta
            tabu[mv, old] = it + tenure_base + np.random.randint(0, 10) + (6 * conflicts) // 10
            if conflicts < best_conf:
                best_conf = conflicts
        if conflicts == 0:
            for v in range(n):
                out[v] = col[v]
            return True
    return False
