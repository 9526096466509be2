"""Sparse multilinear polynomials in the variables x[l, alpha].

Variables come in groups indexed by l; each monomial uses at most one variable
from each group, and within a polynomial every monomial uses the same groups.
A monomial is stored as a tuple of ``(l, alpha)`` pairs sorted by ``l``.
There is no general product: two polynomials may only be multiplied when
their groups are disjoint, which keeps multilinearity an invariant.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .scalars import PrimeField, from_json_scalar, to_json_scalar

Monomial = tuple  # tuple[tuple[int, int], ...], sorted by group index


def monomial(*pairs, n: int | None = None) -> Monomial:
    """Build a canonical monomial from ``(l, alpha)`` pairs."""
    out = {}
    for l, alpha in pairs:
        if l in out:
            raise ValueError(f"group {l} used twice in a multilinear monomial")
        out[l] = alpha % n if n else alpha
    return tuple(sorted(out.items()))


def monomial_from_sources(sources: Iterable[int], n: int) -> Monomial:
    """x[1, a1] x[2, a2] ... x[k, ak] from the tuple (a1, ..., ak)."""
    return tuple((l, a % n) for l, a in enumerate(sources, start=1))


def groups(m: Monomial) -> tuple:
    return tuple(l for l, _ in m)


def format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(f"x[{l},{a}]" for l, a in m)


class MultilinearPoly:
    """Immutable sparse polynomial ``{monomial: coefficient}`` over Z/Q or GF(p)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        shape = None
        for m, c in (terms or {}).items():
            if not c:
                continue
            g = groups(m)
            if shape is None:
                shape = g
            elif g != shape:
                raise ValueError(f"inhomogeneous groups {g} vs {shape}")
            if any(not 0 <= a < n for _, a in m):
                raise ValueError(f"vertex index out of range in {m} for n={n}")
            clean[m] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultilinearPoly is immutable")

    @classmethod
    def zero(cls, n: int) -> "MultilinearPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c=1) -> "MultilinearPoly":
        return cls(n, {(): c})

    @classmethod
    def variable(cls, l: int, alpha: int, n: int, c=1) -> "MultilinearPoly":
        return cls(n, {((l, alpha % n),): c})

    @property
    def groups(self) -> tuple | None:
        for m in self.terms:
            return groups(m)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check_shape(self, other: "MultilinearPoly"):
        if self.n != other.n:
            raise ValueError(f"shape mismatch: n={self.n} vs n={other.n}")
        g1, g2 = self.groups, other.groups
        if g1 is not None and g2 is not None and g1 != g2:
            raise ValueError(f"shape mismatch: groups {g1} vs {g2}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        self._check_shape(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultilinearPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MultilinearPoly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "MultilinearPoly":
        if not c:
            return MultilinearPoly(self.n)
        return MultilinearPoly(self.n, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, MultilinearPoly):
            return self.mul_disjoint(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        return self.scale(other)

    def mul_disjoint(self, other: "MultilinearPoly") -> "MultilinearPoly":
        """Product of two polynomials whose variable groups do not overlap."""
        if self.n != other.n:
            raise ValueError(f"shape mismatch: n={self.n} vs n={other.n}")
        if not self.terms or not other.terms:
            return MultilinearPoly(self.n)
        g1, g2 = set(self.groups), set(other.groups)
        if g1 & g2:
            raise ValueError(f"groups overlap: {sorted(g1 & g2)}")
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultilinearPoly(self.n, out)

    def coefficient(self, m: Monomial):
        return self.terms.get(m, 0)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            parts.append(f"{c}*{format_monomial(m)}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"mono": {str(l): a for l, a in m}, "coeff": to_json_scalar(c)}
                for m, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict, n: int | None = None,
                  field: PrimeField | None = None) -> "MultilinearPoly":
        n = data.get("n", n)
        if n is None:
            raise ValueError("polynomial JSON needs 'n' or an explicit n")
        terms = {}
        for t in data["terms"]:
            m = tuple(sorted((int(l), int(a)) for l, a in t["mono"].items()))
            terms[m] = from_json_scalar(t["coeff"], field)
        return cls(n, terms)


def poly_add(p: MultilinearPoly, q: MultilinearPoly) -> MultilinearPoly:
    return p + q


def poly_scale(c, p: MultilinearPoly) -> MultilinearPoly:
    return p.scale(c)


def poly_eval(p: MultilinearPoly, assignment: Mapping[tuple, object]):
    """Evaluate at ``assignment[(l, alpha)]``; raises KeyError on a missing variable."""
    total = 0
    for m, c in p.terms.items():
        term = c
        for var in m:
            if var not in assignment:
                raise KeyError(f"no value for x[{var[0]},{var[1]}]")
            term = term * assignment[var]
        total = total + term
    return total


def poly_eval_mod(p: MultilinearPoly, assignment: Mapping[tuple, int], modulus: int) -> int:
    """Fast path of :func:`poly_eval` for raw residues."""
    total = 0
    for m, c in p.terms.items():
        term = c % modulus if isinstance(c, int) else (
            c.numerator * pow(c.denominator, -1, modulus))
        for var in m:
            term = term * assignment[var] % modulus
        total += term
    return total % modulus
