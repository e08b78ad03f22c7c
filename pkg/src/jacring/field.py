"""Exact coefficient fields: arbitrary-precision rationals and large prime fields.

Rationals are `fractions.Fraction` (always reduced, positive denominator).
Prime-field elements are plain ints in [0, p).  Every arithmetic routine in
the package goes through a `Field` instance so the whole pipeline can be
switched to a prime field for speed.
"""

from __future__ import annotations

import random
from fractions import Fraction

# Deterministic Miller-Rabin witness set, valid for all n < 3.3e24 (covers 2^62).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, lo: int = 2**50, hi: int = 2**62) -> int:
    """A uniform-ish random prime strictly inside (lo, hi)."""
    while True:
        c = rng.randrange(lo + 1, hi) | 1
        while c < hi and not is_prime(c):
            c += 2
        if lo < c < hi:
            return c


class FieldError(ValueError):
    """Bad field description or an element that cannot live in the field."""


class Field:
    """The rationals (p is None) or GF(p) for a prime p < 2^62."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if p >= 2**62 or not is_prime(p):
                raise FieldError(f"modulus must be a prime < 2^62, got {p}")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def describe(self) -> str:
        return "Q" if self.p is None else f"gfp {self.p}"

    # -- element construction ------------------------------------------------

    def coerce(self, x):
        """Map an int or Fraction (or string like '2/3') into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise FieldError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator % self.p * pow(den, -1, self.p) % self.p
        return x % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def neg(self, a):
        return -a if self.p is None else -a % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = Field.rationals()
