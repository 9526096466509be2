"""Exact dense linear algebra over Q, GF(p) and multilinear-polynomial entries."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .poly import MultilinearPoly, poly_eval_mod
from .scalars import DEFAULT_P, PrimeField, PrimeFieldElem, from_json_scalar, to_json_scalar


@dataclass(frozen=True)
class ExactMatrix:
    """Row-major dense matrix of exact scalars or :class:`MultilinearPoly` entries."""

    entries: tuple

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, MultilinearPoly):
                return x.to_json()
            return to_json_scalar(x)
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[enc(x) for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, data: dict, field: PrimeField | None = None) -> "ExactMatrix":
        def dec(x):
            if isinstance(x, dict):
                return MultilinearPoly.from_json(x, field=field)
            return from_json_scalar(str(x), field)
        return cls([[dec(x) for x in r] for r in data["entries"]])


def _rows(M) -> list:
    if isinstance(M, ExactMatrix):
        return M.tolist()
    if isinstance(M, np.ndarray):
        return M.tolist()
    return [list(r) for r in M]


def _ncols(rows, M) -> int:
    if rows:
        return len(rows[0])
    return M.cols if isinstance(M, ExactMatrix) else 0


def _field_of(rows) -> PrimeField | None:
    for r in rows:
        for x in r:
            if isinstance(x, PrimeFieldElem):
                return PrimeField(x.p, check=False)
    return None


def _integer_rows(rows) -> tuple[list, int]:
    """Clear denominators row by row; returns integer rows and the scale product."""
    out, scale = [], 1
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = math.lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
        scale *= den
    return out, scale


def bareiss_rank(rows) -> int:
    """Fraction-free elimination over Z; pivot = first nonzero in column order."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][c]
        for r in range(rank + 1, nrows):
            f = a[r][c]
            row = a[r]
            for cc in range(c + 1, ncols):
                row[cc] = (pv * row[cc] - f * a[rank][cc]) // prev
            row[c] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_det(rows) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pv = a[c][c]
        for r in range(c + 1, n):
            f = a[r][c]
            for cc in range(c + 1, n):
                a[r][cc] = (pv * a[r][cc] - f * a[c][cc]) // prev
            a[r][c] = 0
        prev = pv
    return sign * a[n - 1][n - 1]


def rank(M, field: PrimeField | None = None) -> int:
    """Exact rank over Q (default) or over ``field``."""
    rows = _rows(M)
    if not rows:
        return 0
    field = field or _field_of(rows)
    if field is not None:
        p = field.p
        return kernels.rank_mod_p(
            [[int(x) if isinstance(x, PrimeFieldElem) else _mod(x, p) for x in r] for r in rows], p)
    ints, _ = _integer_rows(rows)
    return bareiss_rank(ints)


def _mod(x, p: int) -> int:
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def nullity(M, field: PrimeField | None = None) -> int:
    rows = _rows(M)
    return _ncols(rows, M) - rank(rows, field) if rows else _ncols(rows, M)


def det(M, field: PrimeField | None = None):
    rows = _rows(M)
    if any(len(r) != len(rows) for r in rows):
        raise ValueError(f"det needs a square matrix, got {len(rows)}x{len(rows[0])}")
    field = field or _field_of(rows)
    if field is not None:
        return field(_det_mod_p([[_mod(int(x) if isinstance(x, PrimeFieldElem) else x, field.p)
                                   for x in r] for r in rows], field.p))
    ints, scale = _integer_rows(rows)
    d = bareiss_det(ints)
    if scale == 1:
        return d
    return Fraction(d, scale)


def _det_mod_p(a, p: int) -> int:
    n = len(a)
    d = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                for cc in range(c, n):
                    a[r][cc] = (a[r][cc] - f * a[c][cc]) % p
    return d % p


def matmul(A, B):
    """Plain product of list-of-lists matrices with exact entries."""
    n, m, q = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(q):
            s = 0
            for t in range(m):
                a = Ai[t]
                if a:
                    b = B[t][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def poly_variables(rows) -> list:
    vars_ = set()
    for r in rows:
        for x in r:
            if isinstance(x, MultilinearPoly):
                for m in x.terms:
                    vars_.update(m)
    return sorted(vars_)


def evaluate_poly_matrix(rows, assignment: dict, p: int) -> list:
    return [[poly_eval_mod(x, assignment, p) if isinstance(x, MultilinearPoly) else _mod(x, p)
             for x in r] for r in rows]


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Per-trial stream: PCG64 seeded by the (root seed, trial counter) pair."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def random_residue(rng: np.random.Generator, p: int) -> int:
    if p <= (1 << 63) - 1:
        return int(rng.integers(0, p))
    return int.from_bytes(rng.bytes((p.bit_length() + 71) // 8), "little") % p


def rank_poly_matrix(M, strategy: str = "randomized", trials: int = 3, seed: int = 0,
                     p: int = DEFAULT_P) -> int:
    """Rank over the rational function field F(x[l, alpha]).

    ``strategy="randomized"`` returns the maximum rank of evaluations at uniform
    GF(p) points; it never exceeds the true rank and equals it except with
    probability at most trials-many (degree / p) events.
    ``strategy="exact"`` eliminates over the fraction field (small inputs only).
    """
    rows = _rows(M)
    if not rows:
        return 0
    if strategy == "exact":
        return _exact_poly_rank(rows)
    if strategy != "randomized":
        raise ValueError(f"unknown strategy {strategy!r}")
    if trials <= 0:
        raise ValueError("randomized rank needs trials >= 1")
    variables = poly_variables(rows)
    best = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        assignment = {v: random_residue(rng, p) for v in variables}
        best = max(best, kernels.rank_mod_p(evaluate_poly_matrix(rows, assignment, p), p))
    return best


def _exact_poly_rank(rows) -> int:
    import sympy as sp
    from sympy.polys.matrices import DomainMatrix

    variables = poly_variables(rows)
    if not variables:
        return rank([[x if not isinstance(x, MultilinearPoly) else x.coefficient(()) for x in r]
                      for r in rows])
    syms = {v: sp.Symbol(f"x_{v[0]}_{v[1]}") for v in variables}

    def to_expr(x):
        if not isinstance(x, MultilinearPoly):
            return sp.Rational(x)
        return sp.Add(*[sp.Rational(c) * sp.Mul(*[syms[v] for v in m])
                        for m, c in x.terms.items()])

    dm = DomainMatrix.from_Matrix(sp.Matrix([[to_expr(x) for x in r] for r in rows]))
    return int(dm.to_field().rank())
