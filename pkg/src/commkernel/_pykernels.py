"""Pure-Python reference kernels. The compiled module mirrors these signatures."""

from __future__ import annotations


def signed_eulerian_count(n, src, tar, start):
    """Count Eulerian paths from ``start`` and their signed sum.

    Edges are given in reference label order (index 0 is the smallest label).
    The sign of a path is the parity of its label sequence; each appended edge
    adds one inversion per already-used edge with a larger index.
    Returns ``(paths, signed_sum)``.
    """
    m = len(src)
    if m == 0:
        return 1, 1
    out = [[] for _ in range(n)]
    for e in range(m):
        out[src[e]].append(e)
    full = (1 << m) - 1
    total = 0
    signed = 0

    # explicit stack of (vertex, used_mask, parity, next_choice_index)
    stack = [(start, 0, 0)]
    choice = [0]
    while stack:
        v, used, par = stack[-1]
        edges = out[v]
        i = choice[-1]
        while i < len(edges) and (used >> edges[i]) & 1:
            i += 1
        if i >= len(edges):
            stack.pop()
            choice.pop()
            continue
        choice[-1] = i + 1
        e = edges[i]
        npar = par ^ (bin(used >> (e + 1)).count("1") & 1)
        nused = used | (1 << e)
        if nused == full:
            total += 1
            signed += -1 if npar else 1
            continue
        stack.append((tar[e], nused, npar))
        choice.append(0)
    return total, signed


def rank_mod_p(rows, p):
    """Rank of an integer matrix (list of rows) over GF(p).

    Row reduction with the pivot chosen as the first nonzero entry in column
    order. The input is not modified.
    """
    a = [[x % p for x in row] for row in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for c in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if a[r][c]:
                piv = r
                break
        if piv < 0:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        inv = pow(prow[c], -1, p)
        for r in range(rank + 1, nrows):
            row = a[r]
            f = row[c]
            if f:
                f = f * inv % p
                for cc in range(c, ncols):
                    if prow[cc]:
                        row[cc] = (row[cc] - f * prow[cc]) % p
        rank += 1
        if rank == nrows:
            break
    return rank
