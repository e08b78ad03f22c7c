"""The bigraded algebra P[mu_1..mu_r, lambda_1..lambda_s].

A monomial mu^a lambda^b x^m is stored as the tuple (a, b, m); its bidegree
is (q, l) with q = |a| + |b| and l = deg(m) - (a.d + b.e).  Pieces with q < 0
are zero by convention, and an individual (a, b) summand is skipped whenever
its polynomial degree a.d + b.e + l is negative.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .poly import monomials_of_degree, term_key


Monomial = tuple  # (a: tuple, b: tuple, x: tuple)


@lru_cache(maxsize=None)
def compositions(total: int, parts: int) -> tuple:
    """All tuples of `parts` nonnegative ints summing to `total`, lex order."""
    if parts == 0:
        return ((),) if total == 0 else ()
    if parts == 1:
        return ((total,),)
    out = []
    for head in range(total + 1):
        for tail in compositions(total - head, parts - 1):
            out.append((head,) + tail)
    return tuple(out)


def multi_weight(mi: tuple, degrees: tuple) -> int:
    return sum(m * d for m, d in zip(mi, degrees))


def bidegree(spec, mono: Monomial) -> tuple[int, int]:
    a, b, x = mono
    q = sum(a) + sum(b)
    l = sum(x) - multi_weight(a, spec.d) - multi_weight(b, spec.e)
    return q, l


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    a1, b1, x1 = m1
    a2, b2, x2 = m2
    return (
        tuple(p + q for p, q in zip(a1, a2)),
        tuple(p + q for p, q in zip(b1, b2)),
        tuple(p + q for p, q in zip(x1, x2)),
    )


class GradedBasis:
    """Ordered monomial basis of one bigraded piece."""

    __slots__ = ("q", "l", "monomials", "index")

    def __init__(self, q: int, l: int, monomials: list[Monomial]):
        self.q = q
        self.l = l
        self.monomials = monomials
        self.index = {m: i for i, m in enumerate(monomials)}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)


def enumerate_basis(spec, q: int, l: int) -> GradedBasis:
    """All monomials of bidegree (q, l): (a, b) in lex order, then term order."""
    if q < 0:
        return GradedBasis(q, l, [])
    monomials: list[Monomial] = []
    for ab in compositions(q, spec.r + spec.s):
        a, b = ab[: spec.r], ab[spec.r:]
        pdeg = multi_weight(a, spec.d) + multi_weight(b, spec.e) + l
        if pdeg < 0:
            continue
        for x in monomials_of_degree(spec.n + 1, pdeg):
            monomials.append((a, b, x))
    return GradedBasis(q, l, monomials)


def dimension_formula(spec, q: int, l: int) -> int:
    """Binomial-sum dimension of A_q(l); independent of the enumeration."""
    if q < 0:
        return 0
    total = 0
    for ab in compositions(q, spec.r + spec.s):
        pdeg = multi_weight(ab[: spec.r], spec.d) + multi_weight(ab[spec.r:], spec.e) + l
        if pdeg >= 0:
            total += comb(spec.n + pdeg, spec.n)
    return total


class AElement:
    """A bihomogeneous element: monomial -> coefficient, all of one bidegree."""

    __slots__ = ("spec", "q", "l", "terms")

    def __init__(self, spec, q: int, l: int, terms: dict):
        self.spec = spec
        self.q = q
        self.l = l
        self.terms = terms

    @classmethod
    def zero(cls, spec, q: int, l: int) -> "AElement":
        return cls(spec, q, l, {})

    @classmethod
    def from_terms(cls, spec, terms: dict) -> "AElement":
        clean = {}
        bide = None
        for mono, coeff in terms.items():
            c = spec.field.coerce(coeff)
            if c == 0:
                continue
            bd = bidegree(spec, mono)
            if bide is None:
                bide = bd
            elif bd != bide:
                raise ValueError(f"mixed bidegrees {bide} and {bd}")
            clean[mono] = c
        q, l = bide if bide is not None else (0, 0)
        return cls(spec, q, l, clean)

    @classmethod
    def from_poly(cls, spec, poly, a: tuple | None = None, b: tuple | None = None) -> "AElement":
        """poly * mu^a lambda^b as an element of A."""
        a = a if a is not None else (0,) * spec.r
        b = b if b is not None else (0,) * spec.s
        return cls.from_terms(spec, {(a, b, x): c for x, c in poly.terms.items()})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, AElement)
            and self.terms == other.terms
        )

    def add(self, other: "AElement") -> "AElement":
        if not (self.is_zero or other.is_zero) and (self.q, self.l) != (other.q, other.l):
            raise ValueError(f"bidegree mismatch {(self.q, self.l)} vs {(other.q, other.l)}")
        K = self.spec.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            nv = K.add(out.get(m, K.zero), c)
            if nv == 0:
                out.pop(m, None)
            else:
                out[m] = nv
        q, l = (self.q, self.l) if not self.is_zero else (other.q, other.l)
        return AElement(self.spec, q, l, out)

    def scale(self, c) -> "AElement":
        K = self.spec.field
        c = K.coerce(c)
        if c == 0:
            return AElement.zero(self.spec, self.q, self.l)
        return AElement(self.spec, self.q, self.l,
                        {m: K.mul(v, c) for m, v in self.terms.items()})

    def coords(self, basis: GradedBasis) -> dict:
        out = {}
        for m, c in self.terms.items():
            idx = basis.index.get(m)
            if idx is None:
                raise ValueError(f"monomial {m} not in basis ({basis.q},{basis.l})")
            out[idx] = c
        return out


def a_multiply(x: AElement, y: AElement) -> AElement:
    """Exact product; bidegrees add componentwise."""
    if x.spec is not y.spec and x.spec != y.spec:
        raise ValueError("operands live over different ring data")
    K = x.spec.field
    out: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            m = mono_mul(m1, m2)
            nv = K.add(out.get(m, K.zero), K.mul(c1, c2))
            if nv == 0:
                out.pop(m, None)
            else:
                out[m] = nv
    return AElement(x.spec, x.q + y.q, x.l + y.l, out)


def sort_monomials(monomials: list[Monomial]) -> list[Monomial]:
    return sorted(monomials, key=lambda m: (m[0], m[1], term_key(m[2])))


def mono_to_str(mono: Monomial) -> str:
    a, b, x = mono
    pieces = []
    for i, e in enumerate(a):
        if e:
            pieces.append(f"mu{i + 1}" if e == 1 else f"mu{i + 1}^{e}")
    for j, e in enumerate(b):
        if e:
            pieces.append(f"lambda{j + 1}" if e == 1 else f"lambda{j + 1}^{e}")
    for i, e in enumerate(x):
        if e:
            pieces.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    return "*".join(pieces) if pieces else "1"
