"""Geometric dictionaries on top of the ring: log Hodge numbers, the
infinitesimal Torelli surjectivity criterion, and the connectivity-bound
arithmetic with a user-supplied generality defect c.
"""

from __future__ import annotations

from .linalg import SparseMatrix, rank_certified
from .ring import BElement, RingSpec, b_multiply, dim_b, quotient_piece


def hodge_table(spec: RingSpec, l: int = 0) -> dict:
    """Primitive log Hodge numbers at twist l: row q holds dim B_q(d+e-n-1+l).

    Row q is the dimension of H^q of the (n-r-q)-forms with log poles,
    twisted by l, modulo the ambient classes; labels follow the usual
    h^{p,q} convention with p = n - r - q.  When s = l = 0 and n - r is
    even, the middle entry is primitive and the full middle Hodge number is
    one more; both values are reported, nothing is silently added.
    """
    if l < 0:
        raise ValueError("the Hodge dictionary needs twist l >= 0")
    m = spec.n - spec.r
    twist = spec.bold_d + spec.bold_e - spec.n - 1 + l
    rows = []
    for q in range(m + 1):
        p = m - q
        value = dim_b(spec, q, twist)
        middle = spec.s == 0 and l == 0 and m % 2 == 0 and q == m // 2
        rows.append({
            "q": q,
            "p": p,
            "label": f"h^{{{p},{q}}}",
            "primitive": value,
            "full": value + 1 if middle else value,
            "middle_correction_applied": middle,
        })
    return {"l": l, "twist": twist, "rows": rows}


def torelli_report(spec: RingSpec, q: int) -> dict:
    """Degree conditions and the actual surjectivity they are meant to imply.

    The predicate is: delta_min*(n-r-q) + bold_d + bold_e >= n + 1 and
    delta_min*(q-1) + bold_d >= n + 1; these are exactly the conditions that
    force every bihomogeneous component of the two source pieces to sit in
    non-negative polynomial degree, which is what makes the checked map

        B_{n-r-q}(d+e-n-1) (x) B_{q-1}(d-n-1) -> B_{n-r-1}(2(d-n-1)+e)

    surjective; that surjectivity gives injectivity of the period-map
    derivative in cohomological degree q.  Whenever the predicate holds,
    surjectivity must hold too; both bits are reported independently.
    """
    n, r = spec.n, spec.r
    if not 1 <= q <= n - r:
        raise ValueError(f"q must satisfy 1 <= q <= {n - r}")
    dmin, bd, be = spec.delta_min, spec.bold_d, spec.bold_e
    predicate = (dmin * (n - r - q) + bd + be >= n + 1
                 and dmin * (q - 1) + bd >= n + 1)

    left = quotient_piece(spec, n - r - q, bd + be - n - 1)
    right = quotient_piece(spec, q - 1, bd - n - 1)
    target = quotient_piece(spec, n - r - 1, spec.socle_twist)
    if target.dim == 0:
        surjective = True
        rank = 0
    else:
        rows = []
        K = spec.field
        for i in range(left.dim):
            x = BElement(left, {i: K.one})
            for j in range(right.dim):
                y = BElement(right, {j: K.one})
                rows.append(b_multiply(x, y).coords)
        rank = rank_certified(SparseMatrix.from_rows(rows, target.dim, K))
        surjective = rank == target.dim
    return {
        "q": q,
        "predicate": predicate,
        "surjective": surjective,
        "source_dims": [left.dim, right.dim],
        "target_dim": target.dim,
        "rank": rank,
    }


def connectivity_bounds(n: int, r: int, s: int, d: list[int], e: list[int],
                        t: int, c: int) -> dict:
    """The two filtration-vanishing bounds, as pure arithmetic.

    Open case: s <= n-r+2 and delta_min*r >= t+r+1+c.
    Relative case: s = 1 and delta_min*r + e_1 >= t+r+1+c.
    The defect c of the family is an input here; it bounds the cokernel of
    the Kodaira-Spencer map against B_1(0) and cannot be computed from a
    single fiber.
    """
    if n - r < 2:
        raise ValueError(f"bounds need n - r >= 2, got {n - r}")
    if c < 0:
        raise ValueError("c must be nonnegative")
    dmin = min(list(d) + list(e))
    open_case = s <= n - r + 2 and dmin * r >= t + r + 1 + c
    relative_case = s == 1 and dmin * r + e[0] >= t + r + 1 + c
    return {
        "t": t,
        "c": c,
        "delta_min": dmin,
        "open_case_vanishing": open_case,
        "relative_case_vanishing": relative_case,
    }


def family_complex_conditions(n: int, r: int, s: int, d: list[int], e: list[int],
                              a: int, q: int, c: int) -> dict:
    """Numeric exactness conditions for the two family-level complexes.

    The absolute complex needs n-r >= 2 plus (a < n-r-1 or r+s <= n); the
    relative one needs s = 1.  Only the labels of the held conditions are
    returned; no family cohomology is computed.
    """
    dmin = min(list(d) + list(e))
    bd = sum(d)
    dmax = max(d) if d else 0
    absolute = []
    if a >= 0:
        if q == 0 and dmin * a + bd >= c + n + 1:
            absolute.append("i")
        if (q == 1 and dmin * a + bd >= c + n + 2
                and dmin * (a + 1) + bd >= c + n + 1 + dmax):
            absolute.append("ii")
        if dmin * (r + a) >= q + c + n + 1:
            if r + s <= n + 2:
                absolute.append("iii")
            if 2 * a < 2 * (n - r) - q:
                absolute.append("iv")
    relative = []
    if s == 1 and a >= 0:
        e1 = e[0]
        if q == 0 and dmin * a + bd + e1 >= c + n + 1:
            relative.append("i")
        if (q == 1 and dmin * a + bd + e1 >= c + n + 2
                and dmin * (a + 1) + bd + e1 >= c + n + 1 + dmax):
            relative.append("ii")
        if dmin * (r + a) + e1 >= q + c + n + 1:
            relative.append("iii")
    return {
        "a": a,
        "q": q,
        "c": c,
        "ambient_ok": n - r >= 2,
        "star_ok": a < n - r - 1 or r + s <= n,
        "absolute": absolute,
        "relative": relative,
    }


def curve_betti_identity(spec: RingSpec) -> dict:
    """For plane-curve pairs: the two log Hodge numbers against 2g + deg Z - 1."""
    if spec.n != 2 or spec.r != 1 or spec.s < 1:
        raise ValueError("curve identity applies to n=2, r=1, s>=1")
    d = spec.d[0]
    g = (d - 1) * (d - 2) // 2
    deg_z = d * spec.bold_e
    twist = spec.bold_d + spec.bold_e - 3
    lhs = dim_b(spec, 0, twist) + dim_b(spec, 1, twist)
    rhs = 2 * g + deg_z - 1
    return {"sum_of_dims": lhs, "betti_count": rhs, "equal": lhs == rhs,
            "genus": g, "divisor_degree": deg_z}
