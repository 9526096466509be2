"""Orders on vertices, edges, graphs and monomials; initial-coefficient matrices;
the universe U(a, j, I); the flowers H_t; maximal graphs; the structure of Ic(L_0).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .graphs import LabeledDigraph, count_paths, has_eulerian_path, with_extra_edge
from .linalg import ExactMatrix, bareiss_det, nullity, random_residue, trial_rng
from . import kernels
from .poly import MultilinearPoly
from .scalars import DEFAULT_P, admissible_characteristic
from .specialization import Exponents, as_exponents, exponents, gr_of_monomial, numeric_operator


# vertex order: P_0 > P_-1 > P_1 > P_-2 > P_2 > ...

def rep(v: int, n: int) -> int:
    """Representative of v in [-ceil((n-1)/2), floor((n-1)/2)]."""
    v %= n
    return v - n if v > (n - 1) // 2 else v


def vertex_pos(v: int, n: int) -> int:
    """Position in the vertex order; 0 is the largest vertex."""
    x = rep(v, n)
    if x == 0:
        return 0
    return 2 * x if x > 0 else -2 * x - 1


def vertex_cmp(v1: int, v2: int, n: int) -> int:
    p1, p2 = vertex_pos(v1, n), vertex_pos(v2, n)
    return (p1 < p2) - (p1 > p2)


def edge_rank(l: int, v: int, n: int, exps: Exponents) -> tuple:
    """Sort key for (e_l, P_v); smaller key means larger edge.

    Compares the unordered vertex pair (its larger end first), then prefers the
    smaller label. The last entry only matters when 2 s_l = 0 mod n, where the
    same label spans the same pair from either end: the edge leaving the
    smaller vertex counts as larger, which is how H_t's petals are oriented.
    """
    w = v + exps.s[l - 1]
    p, q = vertex_pos(v, n), vertex_pos(w, n)
    return (min(p, q), max(p, q), l, -p)


def graph_key(G: LabeledDigraph, exps) -> tuple:
    """Edge ranks of labels 1..k present in G, largest edge first."""
    exps = as_exponents(exps)
    return tuple(sorted(edge_rank(l, G.source(l), G.n, exps)
                        for l in G.labels if l <= exps.k))


def graph_cmp(G1: LabeledDigraph, G2: LabeledDigraph, exps) -> int:
    """1 if G1 > G2, -1 if G1 < G2, 0 if equal."""
    exps = as_exponents(exps)
    l1 = tuple(l for l in G1.labels if l <= exps.k)
    l2 = tuple(l for l in G2.labels if l <= exps.k)
    if l1 != l2:
        raise ValueError(f"label sets differ: {l1} vs {l2}")
    k1, k2 = graph_key(G1, exps), graph_key(G2, exps)
    return (k1 < k2) - (k1 > k2)


def monomial_key(m, exps, n: int) -> tuple:
    exps = as_exponents(exps)
    return tuple(sorted(edge_rank(l, a, n, exps) for l, a in m))


def monomial_cmp(m1, m2, exps, n: int) -> int:
    k1, k2 = monomial_key(m1, exps, n), monomial_key(m2, exps, n)
    return (k1 < k2) - (k1 > k2)


def _infer_exps(body) -> Exponents:
    for row in body:
        for x in row:
            if isinstance(x, MultilinearPoly) and x.terms:
                return exponents(len(next(iter(x.terms))) // 2)
    return exponents(1)


def ic_matrix(Lj, exps=None) -> tuple:
    """(Ic(M), leading monomial per row). ``Lj`` is a BlockOperator or ExactMatrix."""
    body = Lj.body if hasattr(Lj, "body") else Lj
    rows = body.tolist() if isinstance(body, ExactMatrix) else [list(r) for r in body]
    n = len(rows[0]) if rows else 0
    exps = as_exponents(exps) if exps is not None else _infer_exps(rows)
    out, leads = [], []
    for row in rows:
        best, best_key = None, None
        for x in row:
            if not isinstance(x, MultilinearPoly):
                continue
            for m in x.terms:
                key = monomial_key(m, exps, x.n)
                if best_key is None or key < best_key:
                    best, best_key = m, key
        leads.append(best)
        out.append([x.coefficient(best) if best is not None and isinstance(x, MultilinearPoly) else 0
                    for x in row])
    return ExactMatrix(out), leads


# the universe U(a, j, I)

def _with_slot(n: int, exps: Exponents, j: int, sources) -> LabeledDigraph:
    return LabeledDigraph(n, tuple(x % n for x in exps.s) + (j % n,), tuple(sources) + (None,))


def in_U(G: LabeledDigraph, a: int, j: int, strict: bool = False) -> bool:
    """Conditions (iii)-(iv): no repeated edge and some G_b has an Eulerian path from P_a.

    Only G is required to be free of repeated edges; G_b may repeat an edge
    (its signed sums then vanish). ``strict`` also demands it of the witness
    G_b, which shrinks U but leaves U_nz and Ic unchanged. The maximal-graph
    construction holds for the default reading only.
    """
    if G.has_repeated_edge():
        return False
    n = G.n
    for b in range(n):
        Gb = with_extra_edge(G, b)
        if strict and Gb.has_repeated_edge():
            continue
        for c in range(n):
            if has_eulerian_path(Gb, a, c):
                return True
    return False


def enumerate_U(a: int, j: int, n: int, exps, I=None, strict: bool = False) -> list:
    """Every graph with edge set {e_l : l in I} lying in U(a, j, I)."""
    exps = as_exponents(exps)
    labels = sorted(I) if I is not None else list(range(1, exps.k + 1))
    if len(labels) > exps.k:
        raise ValueError("|I| exceeds k")
    out = []
    for srcs in itertools.product(range(n), repeat=len(labels)):
        full = [None] * exps.k
        for l, v in zip(labels, srcs):
            full[l - 1] = v
        G = _with_slot(n, exps, j, full)
        if in_U(G, a, j, strict):
            out.append(G)
    return out


def U_memberships(srcs, n: int, exps: Exponents, strict: bool = False) -> dict:
    """{j: set of a} with gr(srcs) in U(a, j); empty if gr has a repeated edge.

    Adding e_{k+1}: b -> b+j changes the out-in imbalance by +1 at b and -1 at
    b+j, so only b next to an existing imbalance can help unless G is balanced.
    """
    disp = exps.s
    d = [0] * n
    parent = list(range(n))
    seen = set()

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    supp = set()
    for v, s in zip(srcs, disp):
        w = (v + s) % n
        if (v, w) in seen:
            return {}
        seen.add((v, w))
        d[v] += 1
        d[w] -= 1
        supp.add(v)
        supp.add(w)
        parent[find(v)] = find(w)
    comps = {find(v) for v in supp}
    pos = [v for v in range(n) if d[v] > 0]
    neg = [v for v in range(n) if d[v] < 0]
    balanced = not pos
    out = {}
    for j in range(n):
        starts = set()
        if balanced:
            cands = range(n)
        else:
            cands = set(neg) | {(u - j) % n for u in pos}
        for b in cands:
            c = (b + j) % n
            if strict and (b, c) in seen:
                continue
            d[b] += 1
            d[c] -= 1
            nz = [v for v in range(n) if d[v]]
            if not nz:
                st = None  # any vertex of the support
            elif len(nz) == 2 and d[nz[0]] * d[nz[1]] == -1 and abs(d[nz[0]]) == 1:
                st = nz[0] if d[nz[0]] == 1 else nz[1]
            else:
                st = False
            d[b] -= 1
            d[c] += 1
            if st is False:
                continue
            # connectivity of G plus the edge b -> c
            pieces = set(comps)
            pb = find(b) if b in supp else ("new", b)
            pc = find(c) if c in supp else ("new", c)
            pieces.add(pb)
            pieces.add(pc)
            if len(pieces) - (1 if pb != pc else 0) != 1:
                continue
            if st is None:
                starts |= supp | {b, c}
            else:
                starts.add(st)
        if starts:
            out[j] = starts
    return out


def _h_petal(t: int, n: int, exps: Exponents) -> tuple:
    """The two (label index, source) pairs added when passing from H_{t-1} to H_t."""
    r = exps.r
    if t % 2:
        m = (t + 1) // 2  # petal at P_-m, labels +-t
        return ((t, (-m) % n), (exps.index(-t), 0))
    m = t // 2  # petal at P_m
    return ((t, 0), (exps.index(-t), m % n))


def contained_t(srcs, n: int, exps: Exponents) -> int:
    """Largest t with H_t contained in gr(srcs)."""
    t = 0
    while t < exps.r:
        if all(srcs[l - 1] == v for l, v in _h_petal(t + 1, n, exps)):
            t += 1
        else:
            break
    return t


@dataclass
class UniverseSummary:
    """Brute-force facts about U(a, j) for every (a, j), from one pass over all source tuples."""

    n: int
    exps: Exponents
    best: dict = field(default_factory=dict)      # (a, j) -> (key, srcs)
    top_t: dict = field(default_factory=dict)     # (a, j) -> largest t with H_t inside some member
    size: dict = field(default_factory=dict)      # (a, j) -> |U(a, j)|

    def argmax(self, a: int, j: int) -> LabeledDigraph | None:
        hit = self.best.get((a % self.n, j % self.n))
        return None if hit is None else _with_slot(self.n, self.exps, j, hit[1])


def universe_summary(n: int, exps, strict: bool = False) -> UniverseSummary:
    exps = as_exponents(exps)
    out = UniverseSummary(n, exps)
    for srcs in itertools.product(range(n), repeat=exps.k):
        mem = U_memberships(srcs, n, exps, strict)
        if not mem:
            continue
        key = tuple(sorted(edge_rank(l, v, n, exps) for l, v in enumerate(srcs, 1)))
        t = contained_t(srcs, n, exps) if exps.r else 0
        for j, starts in mem.items():
            for a in starts:
                aj = (a, j)
                out.size[aj] = out.size.get(aj, 0) + 1
                cur = out.best.get(aj)
                if cur is None or key < cur[0]:
                    out.best[aj] = (key, srcs)
                if t > out.top_t.get(aj, -1):
                    out.top_t[aj] = t
    return out


# H_t, reachable sets, maximal graphs

def supp_H(t: int, n: int) -> frozenset:
    if t == 0:
        return frozenset()
    return frozenset(v % n for v in range(-math.ceil(t / 2), t // 2 + 1))


def h_graph(t: int, n: int, r: int, j: int | None = None) -> LabeledDigraph:
    """The flower H_t (2t edges) inside the label set of the canonical exponents for r."""
    if t < 0 or t > r:
        raise ValueError(f"need 0 <= t <= r, got t={t}, r={r}")
    exps = exponents(r)
    srcs = [None] * exps.k
    for u in range(1, t + 1):
        for l, v in _h_petal(u, n, exps):
            srcs[l - 1] = v
    if j is None:
        return LabeledDigraph(n, tuple(x % n for x in exps.s), tuple(srcs))
    return _with_slot(n, exps, j, srcs)


def reachable_set(a: int, t: int, j: int, n: int, exps) -> frozenset:
    """a + every partial sum of {s_i : i in +-(t+1..r)} together with j."""
    exps = as_exponents(exps)
    vals = [exps.of(i) for i in range(t + 1, exps.r + 1)] + \
           [exps.of(-i) for i in range(t + 1, exps.r + 1)] + [j]
    sums = {0}
    for x in vals:
        sums |= {(y + x) % n for y in sums}
    return frozenset((a + y) % n for y in sums)


def max_t(a: int, j: int, n: int, exps) -> int:
    exps = as_exponents(exps)
    if n <= exps.r:
        raise ValueError("need n > r")
    for t in range(exps.r, 0, -1):
        if reachable_set(a, t, j, n, exps) & supp_H(t, n):
            return t
    return 0


def maximal_graph(a: int, j: int, n: int, exps) -> LabeledDigraph:
    """H_t plus a two-way chain from the larger of P_a, P_{a+j}, using labels +-r .. +-(t+1)."""
    exps = as_exponents(exps)
    r = exps.r
    if n <= r:
        raise ValueError("need n > r")
    t = max_t(a, j, n, exps)
    srcs = list(h_graph(t, n, r).sources)
    a2 = (a + j) % n
    ap = a % n if vertex_pos(a, n) <= vertex_pos(a2, n) else a2
    c = ap
    if rep(ap, n) <= 0:
        for m in range(r, t, -1):
            sm = exps.of(m)
            srcs[m - 1] = c
            srcs[exps.index(-m) - 1] = (c + sm) % n
            c = (c + sm) % n
    else:
        for m in range(r, t, -1):
            sm = exps.of(m)
            srcs[exps.index(-m) - 1] = c
            srcs[m - 1] = (c - sm) % n
            c = (c - sm) % n
    return _with_slot(n, exps, j, srcs)


# lazy descent through the graph order

def _items(n: int, exps: Exponents) -> list:
    items = [(edge_rank(l, v, n, exps), l, v) for l in range(1, exps.k + 1) for v in range(n)]
    items.sort()
    return items


def descending_graphs(n: int, exps, start: LabeledDigraph | None = None):
    """Yield source tuples of all graphs on labels 1..k in decreasing order.

    A graph is an increasing run of item positions with distinct labels, so
    depth-first search over positions visits keys in lexicographic order.
    ``start`` resumes at that graph (inclusive).
    """
    exps = as_exponents(exps)
    k = exps.k
    items = _items(n, exps)
    index = {(l, v): i for i, (_, l, v) in enumerate(items)}
    last = {}
    for i, (_, l, _) in enumerate(items):
        last[l] = i
    floor = None
    if start is not None:
        floor = sorted(index[(l, start.source(l))] for l in range(1, k + 1))
    chosen = [0] * k
    used = set()

    def rec(depth, lo, tight):
        if depth == k:
            srcs = [None] * k
            for i in chosen:
                _, l, v = items[i]
                srcs[l - 1] = v
            yield tuple(srcs)
            return
        begin = max(lo, floor[depth]) if tight else lo
        for i in range(begin, len(items)):
            _, l, _ = items[i]
            if l in used:
                continue
            if any(last[m] <= i for m in range(1, k + 1) if m not in used and m != l):
                break
            chosen[depth] = i
            used.add(l)
            yield from rec(depth + 1, i + 1, tight and i == floor[depth])
            used.discard(l)

    yield from rec(0, 0, floor is not None)


@dataclass
class IcRow:
    a: int
    j: int
    row: list
    graph: LabeledDigraph | None
    steps: int
    empty: bool = False


def ic_row_via_maximal(a: int, j: int, n: int, exps, max_steps: int | None = None) -> IcRow:
    """Row a of Ic(L_j): signed sums of G_b from P_a for the largest G in U_nz(a, j)."""
    exps = as_exponents(exps)
    start = maximal_graph(a, j, n, exps)
    steps = 0
    for srcs in descending_graphs(n, exps, start):
        steps += 1
        G = _with_slot(n, exps, j, srcs)
        if not G.has_repeated_edge():
            row = [count_paths(with_extra_edge(G, b), a)[1] for b in range(n)]
            if any(row):
                return IcRow(a, j, row, G, steps)
        if max_steps is not None and steps >= max_steps:
            break
    return IcRow(a, j, [0] * n, None, steps, empty=True)


def ic_via_maximal(n: int, exps, j: int) -> tuple:
    """(Ic(L_j) as ExactMatrix, per-row details)."""
    rows = [ic_row_via_maximal(a, j, n, exps) for a in range(n)]
    return ExactMatrix([r.row for r in rows]), rows


# structure of Ic(L_0)

def n_matrix(r: int) -> ExactMatrix:
    """Rows/columns indexed by [-ceil(r/2), floor(r/2)]; hub index is the 0 entry."""
    if r < 1:
        raise ValueError("r must be >= 1")
    idx = list(range(-math.ceil(r / 2), r // 2 + 1))
    f = math.factorial(r - 1)
    body = []
    for x in idx:
        row = []
        for y in idx:
            if x == 0 and y == 0:
                v = r * (r + 1)
            elif x == 0 or y == 0:
                v = r
            else:
                v = 2 if x == y else 1
            row.append(f * v)
        body.append(row)
    return ExactMatrix(body)


def n_matrix_det_formula(r: int) -> int:
    return math.factorial(r - 1) ** (r + 1) * r * (2 * r + 1)


def delta(j: int, n: int, r: int) -> int:
    """Nullity budget of Ic(L_j), j != 0: how many of j, -j lie in supp(H_r)."""
    s = supp_H(r, n)
    return int(j % n in s) + int((-j) % n in s)


def reindex(M: ExactMatrix, n: int) -> tuple:
    """Rows and columns relabelled -ceil((n-1)/2) .. floor((n-1)/2)."""
    idx = list(range(-math.ceil((n - 1) / 2), (n - 1) // 2 + 1))
    return ExactMatrix([[M[a % n, b % n] for b in idx] for a in idx]), idx


def _factorial_magnitudes(r: int) -> set:
    return {2 * math.factorial(al) for al in range(r + 1)}


def check_block_shape(M0: ExactMatrix, n: int, r: int) -> list:
    """Failures (as strings) of the U / N / L layout of reindexed Ic(L_0)."""
    P, idx = reindex(M0, n)
    lo, hi = -math.ceil(r / 2), r // 2
    upper = [i for i, v in enumerate(idx) if v < lo]
    mid = [i for i, v in enumerate(idx) if lo <= v <= hi]
    lower = [i for i, v in enumerate(idx) if v > hi]
    mags = _factorial_magnitudes(r)
    bad = []
    for i in upper:
        for c in lower:
            if P[i, c]:
                bad.append(f"upper row {idx[i]} has nonzero in column {idx[c]}")
        for c in upper:
            if c < i and P[i, c]:
                bad.append(f"U block not upper triangular at ({idx[i]},{idx[c]})")
        if abs(P[i, i]) not in mags:
            bad.append(f"U diagonal at {idx[i]} is {P[i, i]}")
    for i in lower:
        for c in upper:
            if P[i, c]:
                bad.append(f"lower row {idx[i]} has nonzero in column {idx[c]}")
        for c in lower:
            if c > i and P[i, c]:
                bad.append(f"L block not lower triangular at ({idx[i]},{idx[c]})")
        if abs(P[i, i]) not in mags:
            bad.append(f"L diagonal at {idx[i]} is {P[i, i]}")
    Nref = n_matrix(r)
    hub = idx.index(0)
    for i in mid:
        for c in upper + lower:
            if P[i, c]:
                bad.append(f"middle row {idx[i]} has nonzero in column {idx[c]}")
    for cpos, c in enumerate(mid):
        sgn = 1 if P[hub, c] >= 0 else -1
        for rpos, i in enumerate(mid):
            if sgn * P[i, c] != Nref[rpos, cpos]:
                bad.append(f"N mismatch at ({idx[i]},{idx[c]}): {P[i, c]} vs +-{Nref[rpos, cpos]}")
    return bad


def numeric_blocks(n: int, exps, p: int, seed: int, trial: int) -> list:
    """Every L_j evaluated at one random GF(p) point, as lists of residues."""
    exps = as_exponents(exps)
    rng = trial_rng(seed, trial)
    values = [[random_residue(rng, p) for _ in range(n)] for _ in range(exps.k)]
    L = numeric_operator(n, exps, values, p)
    s = exps.total
    blocks = []
    for j in range(n):
        blocks.append([[L[a * n + (a + j + s) % n, b * n + (b + j) % n] for b in range(n)]
                       for a in range(n)])
    return blocks, L


def structure_report(n: int, r: int, p: int | None = None, trials: int = 3, seed: int = 0,
                     ic_provider=None) -> dict:
    """Check the nullity budget, the block layout of Ic(L_0)' and the rank squeeze.

    ``ic_provider(j)`` may supply Ic(L_j) directly (used to inject faults in tests).
    """
    if n <= r:
        raise ValueError("need n > r")
    exps = exponents(r)
    k = exps.k
    if p is not None and not admissible_characteristic(p, r):
        raise ValueError(f"characteristic {p} divides 2(2r+1)r!")
    checks = []
    ics, rows_info = {}, {}
    for j in range(n):
        if ic_provider is not None:
            ics[j] = ic_provider(j)
        else:
            ics[j], rows_info[j] = ic_via_maximal(n, exps, j)
    null_ic = {j: nullity(ics[j]) if p is None else n - kernels.rank_mod_p(
        [[x % p for x in row] for row in ics[j].tolist()], p) for j in range(n)}

    for j in range(1, n):
        dj = delta(j, n, r)
        checks.append({"name": f"null(Ic(L_{j})) <= delta_{j}", "pass": null_ic[j] <= dj,
                       "value": null_ic[j], "bound": dj})
    d0 = bareiss_det(ics[0].tolist())
    nonsing = d0 != 0 and (p is None or d0 % p != 0)
    checks.append({"name": "Ic(L_0) nonsingular", "pass": nonsing, "det": str(d0)})
    total = sum(null_ic.values())
    checks.append({"name": "sum_j null(Ic(L_j)) = k", "pass": total == k, "value": total, "k": k})
    shape = check_block_shape(ics[0], n, r)
    checks.append({"name": "Ic(L_0)' block layout", "pass": not shape, "witnesses": shape[:10]})
    dsum = sum(delta(j, n, r) for j in range(1, n))
    checks.append({"name": "sum_j delta_j = k", "pass": dsum == k, "value": dsum})

    # randomized squeeze: null(L_j) <= null(Ic(L_j)) and null(L) = k
    pp = p or DEFAULT_P
    best_rank = {j: 0 for j in range(n)}
    best_full = 0
    for t in range(trials):
        blocks, L = numeric_blocks(n, exps, pp, seed, t)
        for j in range(n):
            best_rank[j] = max(best_rank[j], kernels.rank_mod_p(blocks[j], pp))
        best_full = max(best_full, kernels.rank_mod_p(L.tolist(), pp))
    null_L = {j: n - best_rank[j] for j in range(n)}
    squeeze_bad = [j for j in range(n) if null_L[j] > null_ic[j]]
    checks.append({"name": "null(L_j) <= null(Ic(L_j)) (randomized)", "pass": not squeeze_bad,
                   "witnesses": squeeze_bad, "one_sided": True})
    full_null = n * n - best_full
    checks.append({"name": "null(L) = k (randomized)", "pass": full_null == k, "value": full_null,
                   "blocks_sum": sum(null_L.values()), "one_sided": True})

    return {
        "n": n, "r": r, "k": k, "p": p,
        "nullity_Ic": [null_ic[j] for j in range(n)],
        "delta": [None] + [delta(j, n, r) for j in range(1, n)],
        "nullity_L_randomized": [null_L[j] for j in range(n)],
        "det_Ic_L0": str(d0),
        "Ic": {str(j): ics[j].tolist() for j in range(n)},
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
        "note": "randomized ranks are lower bounds, so randomized nullities are upper bounds",
    }
