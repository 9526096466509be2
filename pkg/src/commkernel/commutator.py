"""The standard polynomial and the operator X -> [A_1, ..., A_k, X]."""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .linalg import ExactMatrix, nullity, random_residue, rank, trial_rng
from .scalars import DEFAULT_P, PrimeField, admissible_characteristic, is_probable_prime

MAX_HEAP_M = 13
WARN_HEAP_M = 10
RATIONAL_BOUND = 10 ** 6


def heap_permutations(m: int):
    """Yield (perm, sign) for all of S_m by iterative Heap's algorithm."""
    a = list(range(m))
    c = [0] * m
    sign = 1
    yield tuple(a), sign
    i = 0
    while i < m:
        if c[i] < i:
            if i % 2 == 0:
                a[0], a[i] = a[i], a[0]
            else:
                a[c[i]], a[i] = a[i], a[c[i]]
            sign = -sign
            yield tuple(a), sign
            c[i] += 1
            i = 0
        else:
            c[i] = 0
            i += 1


def _zero(n):
    return [[0] * n for _ in range(n)]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mul(A, B, modulus=None):
    n = len(A)
    out = []
    for i in range(n):
        Ai = A[i]
        row = [0] * n
        for t in range(n):
            a = Ai[t]
            if not a:
                continue
            Bt = B[t]
            for j in range(n):
                b = Bt[j]
                if b:
                    row[j] = row[j] + a * b
        if modulus is not None:
            row = [x % modulus for x in row]
        out.append(row)
    return out


def _axpy(acc, c, B, modulus=None):
    """acc += c * B in place."""
    for i, row in enumerate(B):
        arow = acc[i]
        for j, x in enumerate(row):
            if x:
                arow[j] = arow[j] + (x if c == 1 else -x if c == -1 else c * x)
        if modulus is not None:
            acc[i] = [v % modulus for v in arow]


def _as_lists(mats):
    out = [[list(r) for r in M] for M in mats]
    n = len(out[0]) if out else 0
    for M in out:
        if len(M) != n or any(len(r) != n for r in M):
            raise ValueError("all matrices must be square of the same size")
    return out, n


def standard_polynomial(mats, modulus: int | None = None):
    """[A_1, ..., A_m]: the signed sum over S_m, enumerated with Heap's algorithm.

    ``modulus`` reduces integer entries after every product.
    """
    mats, n = _as_lists(mats)
    m = len(mats)
    if m < 1:
        raise ValueError("need at least one matrix")
    if m > MAX_HEAP_M:
        raise ValueError(f"m={m} exceeds the factorial ceiling {MAX_HEAP_M}")
    if m > WARN_HEAP_M:
        warnings.warn(f"standard polynomial of degree {m} enumerates {m}! permutations")
    acc = _zero(n)
    for perm, sign in heap_permutations(m):
        P = mats[perm[0]]
        for i in perm[1:]:
            P = _mul(P, mats[i], modulus)
        _axpy(acc, sign, P, modulus)
    return acc


def subset_standard_polynomials(mats, modulus: int | None = None) -> dict:
    """[S] for every subset S (bitmask) of the arguments, variables taken in increasing order.

    Expands by the first factor: [S] = sum_x (-1)^{#{y in S: y < x}} A_x [S - x].
    """
    mats, n = _as_lists(mats)
    m = len(mats)
    table = {0: _identity(n)}
    for mask in range(1, 1 << m):
        acc = _zero(n)
        pos = 0
        for x in range(m):
            if mask >> x & 1:
                _axpy(acc, -1 if pos & 1 else 1, _mul(mats[x], table[mask & ~(1 << x)], modulus), modulus)
                pos += 1
        table[mask] = acc
    return table


def standard_polynomial_fast(mats, modulus: int | None = None):
    """Same value as :func:`standard_polynomial` in O(2^m m n^3) ring operations."""
    mats, _ = _as_lists(mats)
    return subset_standard_polynomials(mats, modulus)[(1 << len(mats)) - 1]


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of X -> [A_1..A_k, X]; basis E_ab at index a*n + b."""

    n: int
    body: ExactMatrix


def operator_matrix(mats, modulus: int | None = None) -> OperatorMatrix:
    """Assemble L(A_1..A_k) column by column.

    With X in the last slot, [A_1..A_k, X] = sum over subsets S of
    (-1)^{k - |S| + cross(S)} [S] X [S^c], where cross(S) counts pairs
    x in S, y not in S with x > y. So vec(L) = sum sign * kron([S], [S^c]^T).
    """
    mats, n = _as_lists(mats)
    k = len(mats)
    table = subset_standard_polynomials(mats, modulus)
    full = (1 << k) - 1
    N = n * n
    body = [[0] * N for _ in range(N)]
    for S in range(full + 1):
        Sc = full & ~S
        cross = 0
        for x in range(k):
            if S >> x & 1:
                cross += bin(Sc & ((1 << x) - 1)).count("1")
        size = bin(S).count("1")
        sign = -1 if (k - size + cross) & 1 else 1
        P, Q = table[S], table[Sc]
        # L(E_cd)[a][b] = P[a][c] * Q[d][b]; column index c*n+d, row a*n+b
        for a in range(n):
            Pa = P[a]
            for c in range(n):
                p = Pa[c]
                if not p:
                    continue
                sp = p if sign == 1 else -p
                for d in range(n):
                    Qd = Q[d]
                    col = c * n + d
                    for b in range(n):
                        q = Qd[b]
                        if q:
                            body[a * n + b][col] = body[a * n + b][col] + sp * q
    if modulus is not None:
        body = [[x % modulus for x in r] for r in body]
    return OperatorMatrix(n, ExactMatrix(body))


def operator_matrix_direct(mats, modulus: int | None = None) -> OperatorMatrix:
    """Column-by-column evaluation of [A_1..A_k, E_ab] with Heap's enumeration (oracle)."""
    mats, n = _as_lists(mats)
    N = n * n
    cols = []
    for a in range(n):
        for b in range(n):
            E = _zero(n)
            E[a][b] = 1
            V = standard_polynomial(mats + [E], modulus)
            cols.append([V[i][j] for i in range(n) for j in range(n)])
    body = [[cols[c][r] for c in range(N)] for r in range(N)]
    return OperatorMatrix(n, ExactMatrix(body))


def random_matrix(rng, n: int, p: int | None):
    """Uniform GF(p) residues, or integers in [-10^6, 10^6] when p is None."""
    if p is None:
        return [[int(rng.integers(-RATIONAL_BOUND, RATIONAL_BOUND + 1)) for _ in range(n)]
                for _ in range(n)]
    return [[random_residue(rng, p) for _ in range(n)] for _ in range(n)]


def conjectural_nullity(n: int, k: int) -> int:
    if k % 2 == 0:
        return k
    return k + 1 if n % 2 == 0 else k + 2


def _check_field(field: str, p: int | None):
    if field not in ("q", "gfp"):
        raise ValueError(f"field must be 'q' or 'gfp', got {field!r}")
    if field == "gfp" and not is_probable_prime(p):
        raise ValueError(f"p={p} is not prime")


def _one_trial(n, k, field, p, seed, t):
    rng = trial_rng(seed, t)
    modp = p if field == "gfp" else None
    mats = [random_matrix(rng, n, modp) for _ in range(k)]
    body = operator_matrix(mats, modp).body
    if field == "gfp":
        return n * n - kernels.rank_mod_p(body.tolist(), p)
    return nullity(body)


def conjecture_experiment(n: int, k: int, field: str = "gfp", trials: int = 20, seed: int = 0,
                          p: int = DEFAULT_P, workers: int = 1) -> dict:
    """Sample random k-tuples, record nullity of L; reports, never asserts."""
    if not 2 <= k <= 2 * n - 2:
        raise ValueError(f"k={k} outside 2..2n-2 for n={n}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check_field(field, p)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(workers) as ex:
            obs = list(ex.map(_one_trial, *zip(*[(n, k, field, p, seed, t) for t in range(trials)])))
    else:
        obs = [_one_trial(n, k, field, p, seed, t) for t in range(trials)]
    d = conjectural_nullity(n, k)
    counts = Counter(obs)
    return {
        "n": n, "k": k, "field": field, "p": p if field == "gfp" else None,
        "trials": trials, "seed": seed,
        "nullities": obs,
        "histogram": {str(v): c for v, c in sorted(counts.items())},
        "conjectured": d,
        "agree": counts.get(d, 0),
        "modal": counts.most_common(1)[0][0],
    }


def al_check(n: int, m: int, trials: int = 100, seed: int = 0, p: int = DEFAULT_P) -> bool:
    """True iff [A_1..A_m] vanished on every sampled GF(p) tuple."""
    if m < 2 * n:
        raise ValueError(f"m={m} < 2n={2 * n}; probe standard_polynomial directly instead")
    for t in range(trials):
        rng = trial_rng(seed, t)
        mats = [random_matrix(rng, n, p) for _ in range(m)]
        V = standard_polynomial(mats, p)
        if any(x % p for row in V for x in row):
            return False
    return True
