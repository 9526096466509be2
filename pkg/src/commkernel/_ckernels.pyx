# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the routines in ``_pykernels``."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef extern from "_mulmod.h" nogil:
    uint64_t ck_mulmod(uint64_t a, uint64_t b, uint64_t p)
    uint64_t ck_powmod(uint64_t a, uint64_t e, uint64_t p)
    int ck_popcount(uint64_t x)


def signed_eulerian_count(int n, src, tar, int start):
    cdef int m = len(src)
    if m == 0:
        return 1, 1
    if m > 63:
        raise ValueError("at most 63 edges supported by the compiled kernel")
    cdef int *s = <int *> malloc(m * sizeof(int))
    cdef int *t = <int *> malloc(m * sizeof(int))
    cdef int *off = <int *> malloc((n + 1) * sizeof(int))
    cdef int *adj = <int *> malloc(m * sizeof(int))
    cdef int *vert = <int *> malloc((m + 1) * sizeof(int))
    cdef uint64_t *usedst = <uint64_t *> malloc((m + 1) * sizeof(uint64_t))
    cdef int *parst = <int *> malloc((m + 1) * sizeof(int))
    cdef int *ch = <int *> malloc((m + 1) * sizeof(int))
    cdef int i, e, v, d, par, npar, fill
    cdef uint64_t used, nused, full
    cdef int64_t total = 0, signed = 0
    try:
        for i in range(m):
            s[i] = src[i]
            t[i] = tar[i]
            if s[i] < 0 or s[i] >= n or t[i] < 0 or t[i] >= n:
                raise ValueError("vertex out of range")
        for i in range(n + 1):
            off[i] = 0
        for i in range(m):
            off[s[i] + 1] += 1
        for i in range(n):
            off[i + 1] += off[i]
        for v in range(n):
            fill = off[v]
            for i in range(m):
                if s[i] == v:
                    adj[fill] = i
                    fill += 1
        full = (<uint64_t> 1 << m) - 1
        with nogil:
            d = 0
            vert[0] = start
            usedst[0] = 0
            parst[0] = 0
            ch[0] = off[start]
            while d >= 0:
                v = vert[d]
                used = usedst[d]
                i = ch[d]
                while i < off[v + 1] and (used >> adj[i]) & 1:
                    i += 1
                if i >= off[v + 1]:
                    d -= 1
                    continue
                ch[d] = i + 1
                e = adj[i]
                npar = parst[d] ^ (ck_popcount(used >> (e + 1)) & 1)
                nused = used | (<uint64_t> 1 << e)
                if nused == full:
                    total += 1
                    if npar:
                        signed -= 1
                    else:
                        signed += 1
                    continue
                d += 1
                vert[d] = t[e]
                usedst[d] = nused
                parst[d] = npar
                ch[d] = off[t[e]]
    finally:
        free(s); free(t); free(off); free(adj)
        free(vert); free(usedst); free(parst); free(ch)
    return total, signed


def rank_mod_p(rows, p):
    if not rows:
        return 0
    if p >= (1 << 63) or p < 2:
        raise ValueError("compiled rank needs 2 <= p < 2**63")
    cdef uint64_t P = p
    cdef int nrows = len(rows)
    cdef int ncols = len(rows[0])
    cdef uint64_t *a = <uint64_t *> malloc(nrows * ncols * sizeof(uint64_t))
    cdef uint64_t *tmp
    cdef int r, c, cc, piv, rank = 0
    cdef uint64_t inv, f, x
    try:
        for r in range(nrows):
            row = rows[r]
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for c in range(ncols):
                a[r * ncols + c] = row[c] % p
        with nogil:
            for c in range(ncols):
                piv = -1
                for r in range(rank, nrows):
                    if a[r * ncols + c] != 0:
                        piv = r
                        break
                if piv < 0:
                    continue
                if piv != rank:
                    for cc in range(ncols):
                        x = a[piv * ncols + cc]
                        a[piv * ncols + cc] = a[rank * ncols + cc]
                        a[rank * ncols + cc] = x
                inv = ck_powmod(a[rank * ncols + c], P - 2, P)
                for r in range(rank + 1, nrows):
                    f = a[r * ncols + c]
                    if f != 0:
                        f = ck_mulmod(f, inv, P)
                        for cc in range(c, ncols):
                            x = a[rank * ncols + cc]
                            if x != 0:
                                x = ck_mulmod(f, x, P)
                                a[r * ncols + cc] = (a[r * ncols + cc] + P - x) % P
                rank += 1
                if rank == nrows:
                    break
    finally:
        free(a)
    return rank
