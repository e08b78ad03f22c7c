"""Homogeneous polynomials in X0..Xn with exact coefficients.

Terms are stored as {exponent tuple: scalar}.  The global term order is
graded reverse lexicographic with x0 > x1 > ...; inside a fixed degree,
descending grevlex equals ascending lexicographic order on the reversed
exponent tuple, which is what `term_key` returns.
"""

from __future__ import annotations

from functools import lru_cache

from .field import Field, QQ


class DegreeError(ValueError):
    """Operands with incompatible homogeneous degrees."""


def term_key(expo: tuple) -> tuple:
    """Sort key: ascending over keys == descending grevlex within a degree."""
    return tuple(reversed(expo))


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, degree: int) -> tuple:
    """All exponent tuples of the given total degree, in descending term order."""
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + (a,), remaining - a, slots - 1)

    rec((), degree, nvars)
    out.sort(key=term_key)
    return tuple(out)


class HomogPoly:
    """A homogeneous polynomial; the zero polynomial keeps a nominal degree."""

    __slots__ = ("nvars", "degree", "terms", "field")

    def __init__(self, nvars: int, degree: int, terms: dict, field: Field = QQ):
        self.nvars = nvars
        self.degree = degree
        self.terms = terms
        self.field = field

    @classmethod
    def zero(cls, nvars: int, degree: int = 0, field: Field = QQ) -> "HomogPoly":
        return cls(nvars, degree, {}, field)

    @classmethod
    def from_terms(cls, nvars: int, terms: dict, field: Field = QQ) -> "HomogPoly":
        clean = {}
        degree = None
        for expo, coeff in terms.items():
            if len(expo) != nvars:
                raise DegreeError(f"exponent {expo} has {len(expo)} slots, expected {nvars}")
            c = field.coerce(coeff)
            if c == 0:
                continue
            d = sum(expo)
            if degree is None:
                degree = d
            elif d != degree:
                raise DegreeError(f"mixed degrees {degree} and {d}")
            clean[tuple(expo)] = c
        return cls(nvars, 0 if degree is None else degree, clean, field)

    @classmethod
    def monomial(cls, nvars: int, expo, coeff=1, field: Field = QQ) -> "HomogPoly":
        return cls.from_terms(nvars, {tuple(expo): coeff}, field)

    @classmethod
    def variable(cls, nvars: int, k: int, field: Field = QQ) -> "HomogPoly":
        e = [0] * nvars
        e[k] = 1
        return cls.monomial(nvars, e, 1, field)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        from .parser import poly_to_str

        return f"HomogPoly({poly_to_str(self)!r})"

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]))

    # -- arithmetic ----------------------------------------------------------

    def _check_partner(self, other: "HomogPoly"):
        if self.nvars != other.nvars:
            raise DegreeError("different variable counts")
        if self.field != other.field:
            raise DegreeError("different coefficient fields")

    def add(self, other: "HomogPoly") -> "HomogPoly":
        self._check_partner(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise DegreeError(f"cannot add degrees {self.degree} and {other.degree}")
        K = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            nv = K.add(out.get(e, K.zero), c)
            if nv == 0:
                out.pop(e, None)
            else:
                out[e] = nv
        return HomogPoly(self.nvars, self.degree, out, K)

    def sub(self, other: "HomogPoly") -> "HomogPoly":
        return self.add(other.scale(-1))

    def scale(self, c) -> "HomogPoly":
        K = self.field
        c = K.coerce(c)
        if c == 0 or self.is_zero:
            return HomogPoly.zero(self.nvars, self.degree, K)
        return HomogPoly(
            self.nvars, self.degree, {e: K.mul(v, c) for e, v in self.terms.items()}, K
        )

    def mul(self, other: "HomogPoly") -> "HomogPoly":
        self._check_partner(other)
        K = self.field
        if self.is_zero or other.is_zero:
            return HomogPoly.zero(self.nvars, self.degree + other.degree, K)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nv = K.add(out.get(e, K.zero), K.mul(c1, c2))
                if nv == 0:
                    out.pop(e, None)
                else:
                    out[e] = nv
        return HomogPoly(self.nvars, self.degree + other.degree, out, K)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __mul__(self, other):
        if isinstance(other, HomogPoly):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def map_field(self, field: Field) -> "HomogPoly":
        terms = {}
        for e, c in self.terms.items():
            v = field.coerce(c)
            if v != 0:
                terms[e] = v
        return HomogPoly(self.nvars, self.degree, terms, field)


def partial(p: HomogPoly, k: int) -> HomogPoly:
    """Formal partial derivative with respect to X_k; degree drops by one."""
    if not 0 <= k < p.nvars:
        raise ValueError(f"variable index {k} out of range")
    K = p.field
    out = {}
    for e, c in p.terms.items():
        if e[k] == 0:
            continue
        ne = e[:k] + (e[k] - 1,) + e[k + 1:]
        nv = K.add(out.get(ne, K.zero), K.mul(c, K.coerce(e[k])))
        if nv == 0:
            out.pop(ne, None)
        else:
            out[ne] = nv
    return HomogPoly(p.nvars, max(p.degree - 1, 0), out, K)


def euler_combination(p: HomogPoly) -> HomogPoly:
    """Sum of X_k * dp/dX_k; equals deg(p) * p for homogeneous p."""
    acc = HomogPoly.zero(p.nvars, p.degree, p.field)
    for k in range(p.nvars):
        acc = acc.add(HomogPoly.variable(p.nvars, k, p.field).mul(partial(p, k)))
    return acc


def leading_term(p: HomogPoly):
    e = min(p.terms, key=term_key)
    return e, p.terms[e]


def _mono_divides(e1: tuple, e2: tuple) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def poly_exact_div(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    """Exact quotient f/g; raises if g does not divide f."""
    f._check_partner(g)
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return HomogPoly.zero(f.nvars, max(f.degree - g.degree, 0), f.field)
    K = f.field
    ge, gc = leading_term(g)
    rem = f
    qterms = {}
    while not rem.is_zero:
        re, rc = leading_term(rem)
        if not _mono_divides(ge, re):
            raise ArithmeticError("non-exact polynomial division")
        qe = tuple(a - b for a, b in zip(re, ge))
        qc = K.div(rc, gc)
        qterms[qe] = qc
        rem = rem.sub(g.mul(HomogPoly.monomial(f.nvars, qe, qc, K)))
    return HomogPoly.from_terms(f.nvars, qterms, K)


def _det_cofactor(mat: list[list[HomogPoly]], nvars: int, field: Field) -> HomogPoly:
    """Determinant by column expansion with memoized minors over row subsets."""
    m = len(mat)
    memo: dict[tuple, HomogPoly] = {}

    def minor(rows: tuple, col: int) -> HomogPoly:
        if len(rows) == 1:
            return mat[rows[0]][col]
        key = (rows, col)
        got = memo.get(key)
        if got is not None:
            return got
        acc = None
        for pos, ri in enumerate(rows):
            entry = mat[ri][col]
            if entry.is_zero:
                continue
            sub = rows[:pos] + rows[pos + 1:]
            term = entry.mul(minor(sub, col + 1))
            if pos % 2:
                term = term.scale(-1)
            acc = term if acc is None else acc.add(term)
        if acc is None:
            deg = sum(mat[ri][col + j].degree for j, ri in enumerate(rows))
            acc = HomogPoly.zero(nvars, deg, field)
        memo[key] = acc
        return acc

    return minor(tuple(range(m)), 0)


def _det_bareiss(mat: list[list[HomogPoly]], nvars: int, field: Field) -> HomogPoly:
    """Fraction-free Bareiss determinant over the polynomial ring."""
    m = len(mat)
    a = [row[:] for row in mat]
    sign = 1
    prev = HomogPoly.monomial(nvars, (0,) * nvars, 1, field)
    for k in range(m - 1):
        if a[k][k].is_zero:
            swap = next((i for i in range(k + 1, m) if not a[i][k].is_zero), None)
            if swap is None:
                deg = sum(a[i][i].degree for i in range(m))
                return HomogPoly.zero(nvars, deg, field)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                num = a[i][j].mul(a[k][k]).sub(a[i][k].mul(a[k][j]))
                a[i][j] = poly_exact_div(num, prev)
        prev = a[k][k]
    det = a[m - 1][m - 1]
    return det.scale(-1) if sign < 0 else det


def derivative_determinant(forms: list[HomogPoly]) -> HomogPoly:
    """det of the matrix whose (i,k) entry is d(forms[i])/dX_k, k = 0..n.

    The input must consist of exactly n+1 forms in n+1 variables; the result
    is homogeneous of degree sum(deg - 1).
    """
    if not forms:
        raise ValueError("no forms given")
    nvars = forms[0].nvars
    if len(forms) != nvars:
        raise ValueError(f"need exactly {nvars} forms, got {len(forms)}")
    field = forms[0].field
    mat = [[partial(f, k) for k in range(nvars)] for f in forms]
    if nvars <= 6:
        return _det_cofactor(mat, nvars, field)
    return _det_bareiss(mat, nvars, field)


def _reduced_jacobian(forms: list[HomogPoly]) -> HomogPoly:
    """det of (d(forms[i])/dX_k) for k = 1..n, i.e. dropping the X0 column."""
    nvars = forms[0].nvars
    field = forms[0].field
    mat = [[partial(f, k) for k in range(1, nvars)] for f in forms]
    if len(forms) <= 6:
        return _det_cofactor(mat, nvars, field)
    return _det_bareiss(mat, nvars, field)


def verify_identity_star(forms: list[HomogPoly]) -> bool:
    """Check the determinant identity behind the wedge-generator construction.

    For homogeneous forms F_1..F_{n+1} with A the full derivative determinant
    and J the derivative determinant in X_1..X_n only:

        X0 * A == sum_v (-1)^(v-1) deg(F_v) F_v J(F_1,..,no F_v,..,F_{n+1})

    This is a polynomial identity; False indicates a bug, not bad input.
    """
    if not forms:
        raise ValueError("no forms given")
    nvars = forms[0].nvars
    if len(forms) != nvars:
        raise ValueError(f"need exactly {nvars} forms, got {len(forms)}")
    field = forms[0].field
    a = derivative_determinant(forms)
    lhs = HomogPoly.variable(nvars, 0, field).mul(a)
    rhs = HomogPoly.zero(nvars, lhs.degree, field)
    for v, form in enumerate(forms):
        rest = forms[:v] + forms[v + 1:]
        term = form.mul(_reduced_jacobian(rest)).scale(form.degree)
        if v % 2:
            term = term.scale(-1)
        rhs = rhs.add(term)
    return lhs == rhs
