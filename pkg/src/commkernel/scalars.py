"""Exact scalar fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import math
import os
from fractions import Fraction

Rational = Fraction

MERSENNE_61 = (1 << 61) - 1
DEFAULT_P = int(os.environ.get("COMMKERNEL_P", MERSENNE_61))


def is_probable_prime(p: int) -> bool:
    """Deterministic Miller-Rabin for p < 3.3e24, probabilistic beyond."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def admissible_characteristic(p: int, r: int) -> bool:
    """True when p does not divide 2(2r+1)r!."""
    return (2 * (2 * r + 1) * math.factorial(r)) % p != 0


class PrimeFieldElem:
    """An element of GF(p). Immutable; mixes freely with Python ints."""

    __slots__ = ("residue", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "residue", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeFieldElem is immutable")

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.residue
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(self.residue + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(self.residue - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(o - self.residue, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(self.residue * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.residue, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "PrimeFieldElem":
        if self.residue == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return PrimeFieldElem(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElem(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElem):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PrimeFieldElem({self.residue}, p={self.p})"


class PrimeField:
    """GF(p) as a factory and a bag of raw-int operations for the kernels."""

    def __init__(self, p: int = DEFAULT_P, check: bool = True):
        if check and not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, value) -> PrimeFieldElem:
        if isinstance(value, Fraction):
            value = value.numerator * pow(value.denominator, -1, self.p)
        return PrimeFieldElem(int(value), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def to_json_scalar(c) -> str:
    """Rationals as "num/den" (or "num"), GF(p) elements as their residue."""
    if isinstance(c, PrimeFieldElem):
        return str(c.residue)
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def from_json_scalar(s: str, field: PrimeField | None = None):
    value = Fraction(s)
    if field is not None:
        return field(value)
    if value.denominator == 1:
        return value.numerator
    return value
