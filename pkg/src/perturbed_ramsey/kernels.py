"""Bitset kernels: embedding search, colouring search, partition minimax.

Vertex sets are int64 bitmasks over at most 63 vertices, so bit 63 is never
set and every mask is nonnegative. All loops are iterative with explicit
stacks; the same source runs under numba and as plain Python.
"""

import numpy as np

from ._jit import njit

FULL = np.int64(0x7FFFFFFFFFFFFFFF)

FOUND = 0
EXHAUSTED = 1
BUDGET = 2


@njit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def lowbit_index(x):
    i = 0
    while (x & 1) == 0:
        x >>= 1
        i += 1
    return i


@njit
def bits_above(i):
    if i >= 62:
        return np.int64(0)
    return FULL ^ ((np.int64(2) << i) - 1)


@njit
def find_embedding(adj, allowed, order, back, pdeg, inc_from, first_mask, out):
    """Search for an injective edge-preserving map of a pattern into ``allowed``.

    ``order`` lists pattern vertices in placement order, ``back[d]`` is the
    bitmask of earlier positions adjacent to position ``d`` and ``pdeg[d]`` the
    pattern degree there. Positions ``d >= inc_from`` must map to a larger host
    vertex than position ``d - 1`` (clique symmetry breaking). Candidates are
    tried in ascending order, so with the identity order the first hit is the
    lexicographically least embedding. Writes ``out[pattern_vertex]``.
    """
    m = order.shape[0]
    if m == 0:
        return True
    maxdeg = 0
    for d in range(m):
        if pdeg[d] > maxdeg:
            maxdeg = pdeg[d]
    # degok[j]: allowed vertices with at least j neighbours inside allowed
    degok = np.zeros(maxdeg + 1, np.int64)
    rest = allowed
    while rest:
        b = rest & -rest
        rest ^= b
        u = lowbit_index(b)
        du = popcount(adj[u] & allowed)
        top = du if du < maxdeg else maxdeg
        for j in range(top + 1):
            degok[j] |= b
    cand = np.zeros(m, np.int64)
    used = np.zeros(m + 1, np.int64)
    img = np.zeros(m, np.int64)
    cand[0] = first_mask & degok[pdeg[0]]
    d = 0
    while True:
        c = cand[d]
        if c == 0:
            d -= 1
            if d < 0:
                return False
            continue
        b = c & -c
        cand[d] = c ^ b
        img[d] = lowbit_index(b)
        if d + 1 == m:
            for j in range(m):
                out[order[j]] = img[j]
            return True
        used[d + 1] = used[d] | b
        nm = allowed & ~used[d + 1] & degok[pdeg[d + 1]]
        bk = back[d + 1]
        while bk and nm:
            bb = bk & -bk
            bk ^= bb
            nm &= adj[img[lowbit_index(bb)]]
        if d + 1 >= inc_from:
            nm &= bits_above(img[d])
        d += 1
        cand[d] = nm
    return False


@njit
def _creates_copy(adj, u, cls, colour, row_colour, row_off, row_len, row_inc,
                  order_flat, back_flat, pdeg_flat, scratch):
    allowed = cls | (np.int64(1) << u)
    first = np.int64(1) << u
    for q in range(row_colour.shape[0]):
        if row_colour[q] != colour:
            continue
        o = row_off[q]
        ln = row_len[q]
        if find_embedding(adj, allowed, order_flat[o:o + ln], back_flat[o:o + ln],
                          pdeg_flat[o:o + ln], row_inc[q], first, scratch):
            return True
    return False


@njit
def colour_search(adj, ncol, vorder, row_colour, row_off, row_len, row_inc,
                  order_flat, back_flat, pdeg_flat, budget, fix_first, out_colour):
    """Depth-first search for a vertex colouring with no forbidden pattern.

    A colour is admissible for an uncoloured vertex iff no pattern of that
    colour embeds through the vertex into its colour class. Every node checks
    all uncoloured vertices; a vertex with no admissible colour kills the node,
    otherwise the vertex with fewest admissible colours is branched on (ties
    by ``vorder``). Returns ``(status, nodes)`` with status FOUND (colouring in
    ``out_colour``), EXHAUSTED (none exists) or BUDGET.
    """
    n = adj.shape[0]
    classes = np.zeros((n + 1, ncol), np.int64)
    uncol = np.zeros(n + 1, np.int64)
    branch_v = np.zeros(n + 1, np.int64)
    remaining = np.zeros(n + 1, np.int64)
    scratch = np.zeros(64, np.int64)
    if n > 0:
        uncol[0] = (np.int64(1) << n) - 1
    nodes = 0
    d = 0
    while True:
        nodes += 1
        if nodes > budget:
            return BUDGET, nodes - 1
        if uncol[d] == 0:
            for c in range(ncol):
                rest = classes[d, c]
                while rest:
                    b = rest & -rest
                    rest ^= b
                    out_colour[lowbit_index(b)] = c
            return FOUND, nodes
        best_v = -1
        best_cnt = ncol + 1
        best_allowed = np.int64(0)
        conflict = False
        for idx in range(n):
            u = vorder[idx]
            if (uncol[d] >> u) & 1 == 0:
                continue
            allowed = np.int64(0)
            for c in range(ncol):
                if not _creates_copy(adj, u, classes[d, c], c, row_colour, row_off,
                                     row_len, row_inc, order_flat, back_flat,
                                     pdeg_flat, scratch):
                    allowed |= np.int64(1) << c
            cnt = popcount(allowed)
            if cnt == 0:
                conflict = True
                break
            if cnt < best_cnt:
                best_cnt = cnt
                best_v = u
                best_allowed = allowed
        if conflict:
            remaining[d] = 0
        else:
            if fix_first and d == 0:
                best_allowed &= -best_allowed
            branch_v[d] = best_v
            remaining[d] = best_allowed
        while d >= 0 and remaining[d] == 0:
            d -= 1
        if d < 0:
            return EXHAUSTED, nodes
        r = remaining[d]
        b = r & -r
        remaining[d] = r ^ b
        c = lowbit_index(b)
        v = branch_v[d]
        for j in range(ncol):
            classes[d + 1, j] = classes[d, j]
        classes[d + 1, c] |= np.int64(1) << v
        uncol[d + 1] = uncol[d] & ~(np.int64(1) << v)
        d += 1


@njit
def minimax_rows(rows, nv, group):
    """Minimise, over all assignments of ``nv`` vertices to ``k`` labelled
    parts, the maximum of ``rows[i, mask_i]`` over nonempty parts.

    Assignments are visited in lexicographic order of the tuple (part of
    vertex 0, ..., part of vertex nv-1). Parts sharing a ``group`` id are
    interchangeable; only assignments where such parts are first used in index
    order are visited, which keeps the first minimiser unchanged. Returns
    ``(best_value, best_index)``; the value is -1 only when ``nv == 0``.
    """
    k = rows.shape[0]
    total = 1
    for _ in range(nv):
        total *= k
    floor = rows[0, 1] if nv > 0 else -1
    for i in range(k):
        for s in range(1, rows.shape[1]):
            if rows[i, s] < floor:
                floor = rows[i, s]
    masks = np.zeros(k, np.int64)
    first = np.zeros(k, np.int64)
    best = np.int64(0x7FFFFFFFFFFFFFFF)
    best_t = -1
    for t in range(total):
        for i in range(k):
            masks[i] = 0
            first[i] = nv
        x = t
        for j in range(nv - 1, -1, -1):
            p = x % k
            x //= k
            masks[p] |= np.int64(1) << j
            first[p] = j
        canonical = True
        for i in range(k):
            for i2 in range(i + 1, k):
                if group[i] == group[i2] and first[i] > first[i2]:
                    canonical = False
        if not canonical:
            continue
        val = -1
        for i in range(k):
            if masks[i]:
                w = rows[i, masks[i]]
                if w > val:
                    val = w
                    if val >= best:
                        break
        if val < best:
            best = val
            best_t = t
            if best <= floor:
                break
    return best, best_t


@njit
def subset_edge_counts(adj):
    """Number of induced edges for every vertex subset (index = bitmask)."""
    n = adj.shape[0]
    size = np.int64(1) << n
    e = np.zeros(size, np.int64)
    for s in range(1, size):
        v = lowbit_index(s)
        rest = s & (s - 1)
        e[s] = e[rest] + popcount(adj[v] & rest)
    return e
