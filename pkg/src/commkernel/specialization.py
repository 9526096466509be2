"""Shifted-diagonal specialization A_l = D_l C^{s_l} and the blocks L_j it produces.

With this choice L(A_1..A_k) maps V_j (spanned by E_{i,i+j}) into V_{j+s}, so the
operator splits into n blocks L_j. Entries of L_j are multilinear polynomials
whose coefficients are signed Eulerian path counts.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .commutator import operator_matrix
from .graphs import LabeledDigraph, count_paths, end_vertex
from .linalg import ExactMatrix
from .poly import Monomial, MultilinearPoly, monomial_from_sources


@dataclass(frozen=True)
class Exponents:
    s: tuple
    r: int | None = None

    @property
    def k(self) -> int:
        return len(self.s)

    @property
    def total(self) -> int:
        return sum(self.s)

    def of(self, label: int) -> int:
        """s_l for l in 1..k, with the alias s_{-i} = s_{r+i}."""
        if label < 0:
            if self.r is None:
                raise ValueError("negative labels need the canonical exponents")
            label = self.r - label
        return self.s[label - 1]

    def index(self, label: int) -> int:
        """Original 1..k index of a signed label."""
        return self.r - label if label < 0 else label


def exponents(r: int) -> Exponents:
    """(1, 1, 2, 2, ..., ceil(r/2), -1, -1, ..., -ceil(r/2))."""
    if r < 1:
        raise ValueError("r must be >= 1")
    pos = tuple(math.ceil(i / 2) for i in range(1, r + 1))
    return Exponents(pos + tuple(-x for x in pos), r)


def as_exponents(exps) -> Exponents:
    if isinstance(exps, Exponents):
        return exps
    if isinstance(exps, int):
        return exponents(exps)
    return Exponents(tuple(exps))


def cyclic_matrix(n: int) -> list:
    if n < 1:
        raise ValueError("n must be >= 1")
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][(i + 1) % n] = 1
    return C


def build_A(l: int, n: int, s: int) -> list:
    """sum_alpha x[l, alpha] E_{alpha, alpha + s}."""
    A = [[0] * n for _ in range(n)]
    for alpha in range(n):
        A[alpha][(alpha + s) % n] = MultilinearPoly.variable(l, alpha, n)
    return A


def build_numeric_A(values: list, n: int, s: int) -> list:
    """D C^s with diagonal ``values``."""
    A = [[0] * n for _ in range(n)]
    for alpha in range(n):
        A[alpha][(alpha + s) % n] = values[alpha]
    return A


@dataclass(frozen=True)
class BlockOperator:
    """L_j as an n x n matrix; column b is L(E_{b,b+j}) in the basis E_{a,a+j+s}."""

    n: int
    j: int
    shift: int  # s = sum of exponents
    body: ExactMatrix

    def to_json(self) -> dict:
        return {"n": self.n, "j": self.j, "s": self.shift, "body": self.body.to_json()}


def gr_of_monomial(m: Monomial, exps, n: int, j: int | None = None) -> LabeledDigraph:
    """gr(m); with ``j`` the graph keeps an empty slot for e_{k+1}."""
    exps = as_exponents(exps)
    if [l for l, _ in m] != list(range(1, exps.k + 1)):
        raise ValueError("monomial must use each group 1..k exactly once")
    disp = exps.s + ((j,) if j is not None else ())
    src = tuple(a for _, a in m)
    return LabeledDigraph(n, disp, src)


def mon_of_graph(G: LabeledDigraph, k: int | None = None) -> Monomial:
    k = k if k is not None else len(G.labels)
    if any(G.source(l) is None for l in range(1, k + 1)) or len(G.labels) != k:
        raise ValueError(f"graph must carry exactly the labels 1..{k}")
    return monomial_from_sources([G.source(l) for l in range(1, k + 1)], G.n)


def block_terms(n: int, exps, j: int) -> dict:
    """{(a, b): {monomial: coefficient}} of L_j via signed Eulerian counts.

    Source tuples are pruned by the degree test before any enumeration:
    a candidate survives only if adding e_{k+1} at some b leaves at most one
    surplus and one deficit vertex. Graphs with a repeated edge contribute 0.
    """
    exps = as_exponents(exps)
    k = exps.k
    j %= n
    disp = tuple(x % n for x in exps.s) + (j,)
    out: dict = {}
    for srcs in itertools.product(range(n), repeat=k):
        d = [0] * n
        pairs = set()
        rep = False
        for a, s in zip(srcs, disp):
            t = (a + s) % n
            d[a] += 1
            d[t] -= 1
            if (a, t) in pairs:
                rep = True
                break
            pairs.add((a, t))
        if rep:
            continue
        mono = None
        for b in range(n):
            if (b, (b + j) % n) in pairs:
                continue
            d[b] += 1
            d[(b + j) % n] -= 1
            nz = [v for v in range(n) if d[v]]
            if not nz:
                starts = set(srcs) | {b}
            elif len(nz) == 2 and sorted(d[v] for v in nz) == [-1, 1]:
                starts = {nz[0] if d[nz[0]] == 1 else nz[1]}
            else:
                starts = ()
            if starts:
                G = LabeledDigraph(n, disp, srcs + (b,))
                for a in starts:
                    if end_vertex(G, a) is None:
                        continue
                    _, c = count_paths(G, a)
                    if c:
                        mono = mono or monomial_from_sources(srcs, n)
                        out.setdefault((a, b), {})[mono] = c
            d[b] -= 1
            d[(b + j) % n] += 1
    return out


def block_Lj_direct(n: int, exps, j: int) -> BlockOperator:
    exps = as_exponents(exps)
    terms = block_terms(n, exps, j)
    body = [[MultilinearPoly(n, terms.get((a, b), {})) for b in range(n)] for a in range(n)]
    return BlockOperator(n, j % n, exps.total, ExactMatrix(body))


@lru_cache(maxsize=16)
def _symbolic_operator(n: int, s: tuple):
    mats = [build_A(l, n, sl) for l, sl in enumerate(s, 1)]
    return operator_matrix(mats).body


def full_symbolic_operator(n: int, exps) -> ExactMatrix:
    return _symbolic_operator(n, as_exponents(exps).s)


class BlockPatternError(ValueError):
    pass


def block_Lj_via_operator(n: int, exps, j: int) -> BlockOperator:
    """Restrict the full symbolic operator to V_j -> V_{j+s}."""
    exps = as_exponents(exps)
    j %= n
    s = exps.total
    L = full_symbolic_operator(n, exps)
    body = []
    for a in range(n):
        row = a * n + (a + j + s) % n
        body.append([L[row, b * n + (b + j) % n] for b in range(n)])
    for b in range(n):
        col = b * n + (b + j) % n
        for r in range(n * n):
            a, c = divmod(r, n)
            if (c - a - j - s) % n and L[r, col]:
                raise BlockPatternError(f"entry at row E_{a}{c}, column E_{b}{(b + j) % n} "
                                        f"lies outside V_(j+s)")
    body = [[x if isinstance(x, MultilinearPoly) else MultilinearPoly(n) for x in r] for r in body]
    return BlockOperator(n, j, s, ExactMatrix(body))


def numeric_operator(n: int, exps, values: list, modulus: int | None = None) -> ExactMatrix:
    """The full operator at a numeric point; ``values[l-1][alpha]`` = x[l, alpha]."""
    exps = as_exponents(exps)
    mats = [build_numeric_A(values[l], n, sl) for l, sl in enumerate(exps.s)]
    return operator_matrix(mats, modulus).body
