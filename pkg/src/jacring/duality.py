"""Trace pairings, their perfectness case analysis, and the wedge kernel.

The pairing between B_p(bold_d - n - 1 + l) and B_{n-r-p}(bold_d + bold_e
- n - 1 - l) is multiplication into the socle followed by the trace
functional.  Depending on (n, r, s, p, l, degrees) the pairing is provably
perfect, provably injective on the left, or merely computed; the classifier
below applies those hypotheses verbatim and everything else reports the
defect without asserting exactness.
"""

from __future__ import annotations

from itertools import combinations

from .graded import AElement
from .linalg import SparseMatrix, rank_and_kernel, rank_certified, rref
from .poly import HomogPoly, derivative_determinant
from .ring import (
    RingSpec,
    SocleError,
    quotient_piece,
    trace_functional,
)

CASE_PERFECT_MIXED_LOW = "II-2-i"
CASE_PERFECT_MIXED_RANGE = "II-2-ii"
CASE_PERFECT_CLASSICAL = "II-2-iii"
CASE_INJECTIVE_TOP = "II-3-injective"
CASE_UNCOVERED = "uncovered"


def classify_pairing(spec: RingSpec, p: int, l: int) -> str:
    """Which duality hypothesis, if any, covers the pair (p, l)."""
    n, r, s = spec.n, spec.r, spec.s
    if s >= 1 and p < n - r and l < spec.e_max:
        return CASE_PERFECT_MIXED_LOW
    if s >= 1 and 0 <= l <= spec.e_max and r + s <= n:
        return CASE_PERFECT_MIXED_RANGE
    if s == 0 and l == 0 and (n - r >= 1 or (n - r == 0 and p == 0)):
        return CASE_PERFECT_CLASSICAL
    if s >= 1 and p == n - r and l < spec.e_max:
        return CASE_INJECTIVE_TOP
    return CASE_UNCOVERED


class PairingReport:
    __slots__ = ("p", "l", "left_dim", "right_dim", "matrix", "rank",
                 "kernel_left", "case", "zero_by_convention")

    def __init__(self, p, l, left_dim, right_dim, matrix, rank, kernel_left,
                 case, zero_by_convention=False):
        self.p = p
        self.l = l
        self.left_dim = left_dim
        self.right_dim = right_dim
        self.matrix = matrix
        self.rank = rank
        self.kernel_left = kernel_left
        self.case = case
        self.zero_by_convention = zero_by_convention

    @property
    def perfect(self) -> bool:
        return self.rank == self.left_dim == self.right_dim

    @property
    def defect(self) -> tuple[int, int]:
        return (self.left_dim - self.rank, self.right_dim - self.rank)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "l": self.l,
            "left_dim": self.left_dim,
            "right_dim": self.right_dim,
            "rank": self.rank,
            "left_kernel_dim": len(self.kernel_left),
            "case": self.case,
            "perfect": self.perfect,
            "defect": list(self.defect),
            "zero_by_convention": self.zero_by_convention,
        }


def gram_matrix(spec: RingSpec, left, right) -> SparseMatrix:
    """Gram matrix of the trace pairing over the standard bases."""
    tau = trace_functional(spec)
    rows = []
    lm = left.ambient.monomials
    rm = right.ambient.monomials
    for i in range(left.dim):
        mi = lm[left.standard[i]]
        row = {}
        for j in range(right.dim):
            v = tau.of_monomial_product(mi, rm[right.standard[j]])
            if v != 0:
                row[j] = v
        rows.append(row)
    return SparseMatrix.from_rows(rows, right.dim, spec.field)


def pairing_report(spec: RingSpec, p: int, l: int) -> PairingReport:
    left = quotient_piece(spec, p, spec.bold_d - spec.n - 1 + l)
    right = quotient_piece(spec, spec.n - spec.r - p,
                           spec.bold_d + spec.bold_e - spec.n - 1 - l)
    case = classify_pairing(spec, p, l)
    if spec.r > spec.n:
        zero = SparseMatrix(left.dim, right.dim, [{} for _ in range(left.dim)],
                            spec.field)
        kernel = [{i: spec.field.one} for i in range(left.dim)]
        return PairingReport(p, l, left.dim, right.dim, zero, 0, kernel,
                             case, zero_by_convention=True)
    gram = gram_matrix(spec, left, right)
    rank, left_kernel = rank_and_kernel(gram.transpose())
    return PairingReport(p, l, left.dim, right.dim, gram, rank, left_kernel, case)


def duality_defect(spec: RingSpec, p: int, l: int) -> tuple[int, int]:
    rep = pairing_report(spec, p, l)
    return rep.defect


class WedgeGenerator:
    __slots__ = ("indices", "a_poly", "a_prime")

    def __init__(self, indices, a_poly, a_prime):
        self.indices = indices
        self.a_poly = a_poly
        self.a_prime = a_prime


def wedge_generators(spec: RingSpec) -> list[WedgeGenerator]:
    """Determinant generators: one per choice of n-r+1 of the divisor forms.

    Each determinant of the gradient matrix of (F_1..F_r, G_j1..G_j{n-r+1}),
    multiplied by the complementary G's, lands in degree bold_d+bold_e-n-1.
    """
    m = spec.n - spec.r + 1
    if spec.s < m or m < 1:
        return []
    out = []
    for combo in combinations(range(spec.s), m):
        forms = spec.F + [spec.G[j] for j in combo]
        a_poly = derivative_determinant(forms)
        a_prime = a_poly
        for j in range(spec.s):
            if j not in combo:
                a_prime = a_prime.mul(spec.G[j])
        expected = spec.bold_d + spec.bold_e - spec.n - 1
        if not a_prime.is_zero and a_prime.degree != expected:
            raise AssertionError("wedge generator degree bookkeeping broke")
        out.append(WedgeGenerator(tuple(j + 1 for j in combo), a_poly, a_prime))
    return out


def dual_kernel_report(spec: RingSpec, rigorous_equality: bool = True) -> dict:
    """Kernel of the dual duality map at the top piece, against the wedge span.

    Computes ker of B_0(bold_d+bold_e-n-1) -> B_{n-r}(bold_d-n-1)^* given by
    x -> tau(x . ), and the span of the determinant generators inside the
    source; reports both dimensions and whether the spaces coincide.  The
    expected kernel dimension on transversal input is C(s-1, n-r).
    """
    n, r, s = spec.n, spec.r, spec.s
    if n - r < 1:
        raise SocleError("dual kernel check needs n - r >= 1")
    left = quotient_piece(spec, 0, spec.bold_d + spec.bold_e - n - 1)
    right = quotient_piece(spec, n - r, spec.bold_d - n - 1)
    gram = gram_matrix(spec, left, right)
    _, kernel = rank_and_kernel(gram.transpose())

    wedges = wedge_generators(spec)
    wedge_rows = []
    for w in wedges:
        cls = left.coords_of(AElement.from_poly(spec, w.a_prime))
        if cls:
            wedge_rows.append(cls)
    wedge_rank = rank_certified(
        SparseMatrix.from_rows(wedge_rows, left.dim, spec.field))

    kernel_dim = len(kernel)
    equal = kernel_dim == wedge_rank
    if equal and rigorous_equality and kernel_dim:
        stacked = SparseMatrix.from_rows(
            [dict(v) for v in kernel] + wedge_rows, left.dim, spec.field)
        equal = len(rref(stacked)[0]) == kernel_dim
    from math import comb

    return {
        "kernel_dim": kernel_dim,
        "wedge_span_dim": wedge_rank,
        "equal": equal,
        "expected_kernel_dim": comb(s - 1, n - r) if s >= 1 else 0,
        "kernel_basis": kernel,
        "source_dim": left.dim,
        "target_dim": right.dim,
        "surjective": left.dim - kernel_dim == right.dim,
    }


def wedge_ideal_membership(spec: RingSpec) -> dict:
    """Check that every wedge generator annihilates the whole ring.

    A' mu_i and A' lambda_j must land in the ideal piece of the matching
    bidegree for every i <= r, j <= s.  Vacuously true when there are no
    wedge generators.
    """
    failures = []
    checked = 0
    for w in wedge_generators(spec):
        for i in range(spec.r):
            a = tuple(1 if t == i else 0 for t in range(spec.r))
            elem = AElement.from_poly(spec, w.a_prime, a=a)
            piece = quotient_piece(spec, elem.q, elem.l)
            checked += 1
            if piece.coords_of(elem):
                failures.append({"wedge": w.indices, "factor": f"mu{i + 1}"})
        for j in range(spec.s):
            b = tuple(1 if t == j else 0 for t in range(spec.s))
            elem = AElement.from_poly(spec, w.a_prime, b=b)
            piece = quotient_piece(spec, elem.q, elem.l)
            checked += 1
            if piece.coords_of(elem):
                failures.append({"wedge": w.indices, "factor": f"lambda{j + 1}"})
    return {"ok": not failures, "checked": checked, "failures": failures}


def artinian_quotient_dim(forms: list[HomogPoly], degree: int) -> int:
    """dim of the degree piece of P modulo the ideal the forms generate."""
    if not forms:
        raise ValueError("no forms given")
    nvars = forms[0].nvars
    field = forms[0].field
    from math import comb

    from .poly import monomials_of_degree

    if degree < 0:
        return 0
    ambient = monomials_of_degree(nvars, degree)
    index = {m: i for i, m in enumerate(ambient)}
    rows = []
    for form in forms:
        cdeg = degree - form.degree
        if cdeg < 0:
            continue
        for m in monomials_of_degree(nvars, cdeg):
            row = {}
            for fx, fc in form.terms.items():
                row[index[tuple(a + b for a, b in zip(fx, m))]] = fc
            rows.append(row)
    pivots, _ = rref(SparseMatrix.from_rows(rows, len(ambient), field))
    assert len(ambient) == comb(nvars - 1 + degree, nvars - 1)
    return len(ambient) - len(pivots)


def macaulay_socle_dim(spec: RingSpec) -> int:
    """dim of degree bold_d + bold_e - n - 1 in P/(F_1..F_n, G_1) for r = n.

    Classical complete-intersection socle count: 1 when s = 1, and 0 for
    s >= 2 because the inspected degree then exceeds the top socle degree.
    """
    if spec.r != spec.n or spec.s < 1:
        raise ValueError("macaulay check needs r = n and s >= 1")
    degree = spec.bold_d + spec.bold_e - spec.n - 1
    return artinian_quotient_dim(spec.F + [spec.G[0]], degree)
