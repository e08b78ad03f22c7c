"""Jacobian rings of open complete intersections.

The input datum is a RingSpec: forms F_1..F_r cutting the complete
intersection and G_1..G_s cutting the divisor components.  The ideal is
generated by the n+1 mixed derivative elements eta_k (bidegree (1,-1)), the
F_i (bidegree (0, d_i)) and the G_j lambda_j (bidegree (1, 0)); each graded
piece of the quotient is presented by an exact row reduction of the ideal
piece, with the surviving standard monomials as basis.
"""

from __future__ import annotations

import hashlib
import threading

from .field import Field, QQ
from .graded import (
    AElement,
    GradedBasis,
    a_multiply,
    dimension_formula,
    enumerate_basis,
    mono_mul,
)
from .linalg import SparseMatrix, rank_certified, reduce_against, rref
from .poly import HomogPoly, partial


class SpecError(ValueError):
    """Inconsistent ring data."""


class SocleError(RuntimeError):
    """The socle piece is not 1-dimensional (transversality probably fails)."""


class RingSpec:
    """Immutable input datum; graded pieces are memoized per instance."""

    def __init__(self, n: int, F: list[HomogPoly], G: list[HomogPoly],
                 field: Field = QQ, assume_smooth: bool = False):
        if n < 2:
            raise SpecError(f"need n >= 2, got {n}")
        if len(F) + len(G) < 1:
            raise SpecError("need r + s >= 1 forms")
        self.n = n
        self.r = len(F)
        self.s = len(G)
        self.field = field
        self.F = [f.map_field(field) for f in F]
        self.G = [g.map_field(field) for g in G]
        for name, form in [("F", f) for f in self.F] + [("G", g) for g in self.G]:
            if form.nvars != n + 1:
                raise SpecError(f"{name} form uses {form.nvars} variables, expected {n + 1}")
            if form.is_zero:
                raise SpecError(f"{name} form is zero")
            if form.degree < 1:
                raise SpecError(f"{name} form has degree {form.degree} < 1")
        self.d = tuple(f.degree for f in self.F)
        self.e = tuple(g.degree for g in self.G)
        self.bold_d = sum(self.d)
        self.bold_e = sum(self.e)
        self.delta_min = min(self.d + self.e)
        self.d_max = max(self.d) if self.d else 0
        self.e_max = max(self.e) if self.e else 0
        self.assume_smooth = assume_smooth
        self.warnings: list[str] = []
        if self.r > n:
            self.warnings.append(
                f"r = {self.r} exceeds n = {n}; no geometric interpretation, "
                "duality maps are zero by convention"
            )
        self._pieces: dict[tuple[int, int], QuotientPiece] = {}
        self._bases: dict[tuple[int, int], GradedBasis] = {}
        self._lock = threading.Lock()
        self._generators: list | None = None
        self._trace: TraceFunctional | None = None

    def __eq__(self, other):
        return isinstance(other, RingSpec) and (
            self.n, self.F, self.G, self.field,
        ) == (other.n, other.F, other.G, other.field)

    def __hash__(self):
        return hash((self.n, tuple(self.F), tuple(self.G), self.field))

    def spec_hash(self) -> str:
        from .parser import poly_to_str

        h = hashlib.sha256()
        h.update(self.field.describe().encode())
        h.update(f"|n={self.n}".encode())
        for f in self.F:
            h.update(f"|F{f.degree}:{poly_to_str(f)}".encode())
        for g in self.G:
            h.update(f"|G{g.degree}:{poly_to_str(g)}".encode())
        return h.hexdigest()[:16]

    @property
    def socle_twist(self) -> int:
        return 2 * (self.bold_d - self.n - 1) + self.bold_e

    def basis(self, q: int, l: int) -> GradedBasis:
        key = (q, l)
        got = self._bases.get(key)
        if got is None:
            got = enumerate_basis(self, q, l)
            with self._lock:
                self._bases.setdefault(key, got)
        return got

    def dim_ambient(self, q: int, l: int) -> int:
        return dimension_formula(self, q, l)


def jacobian_generators(spec: RingSpec) -> list[tuple[AElement, tuple[int, int], str]]:
    """The n+1+r+s ideal generators with their bidegrees and display names."""
    if spec._generators is not None:
        return spec._generators
    n, r, s = spec.n, spec.r, spec.s
    gens = []
    for k in range(n + 1):
        terms = {}
        for i, f in enumerate(spec.F):
            a = tuple(1 if t == i else 0 for t in range(r))
            for x, c in partial(f, k).terms.items():
                terms[(a, (0,) * s, x)] = c
        for j, g in enumerate(spec.G):
            b = tuple(1 if t == j else 0 for t in range(s))
            for x, c in partial(g, k).terms.items():
                terms[((0,) * r, b, x)] = c
        gens.append((AElement.from_terms(spec, terms) if terms
                     else AElement.zero(spec, 1, -1), (1, -1), f"eta{k}"))
    for i, f in enumerate(spec.F):
        a = tuple(1 if t == i else 0 for t in range(r))
        gens.append((AElement.from_poly(spec, f), (0, f.degree), f"F{i + 1}"))
    for j, g in enumerate(spec.G):
        b = tuple(1 if t == j else 0 for t in range(s))
        gens.append((AElement.from_poly(spec, g, b=b), (1, 0), f"G{j + 1}*lambda{j + 1}"))
    spec._generators = gens
    return gens


class IdealPiece:
    """Row span of J intersected with one bigraded piece."""

    __slots__ = ("q", "l", "span_matrix", "pivots", "rows")

    def __init__(self, q, l, span_matrix, pivots, rows):
        self.q = q
        self.l = l
        self.span_matrix = span_matrix
        self.pivots = pivots
        self.rows = rows

    @property
    def rank(self) -> int:
        return len(self.pivots)


class QuotientPiece:
    """Echelon presentation of B_q(l) with its standard-monomial basis."""

    __slots__ = ("spec", "q", "l", "ambient", "pivot_rows", "pivots",
                 "standard", "std_pos", "_nf_cache")

    def __init__(self, spec, q, l, ambient, pivots, rows):
        self.spec = spec
        self.q = q
        self.l = l
        self.ambient = ambient
        self.pivots = pivots
        self.pivot_rows = dict(zip(pivots, rows))
        pivot_set = set(pivots)
        self.standard = [i for i in range(ambient.dim) if i not in pivot_set]
        self.std_pos = {amb: pos for pos, amb in enumerate(self.standard)}
        self._nf_cache: dict[int, dict] = {}

    @property
    def dim(self) -> int:
        return len(self.standard)

    def reduce_vector(self, vec: dict) -> dict:
        """Normal form in ambient coordinates (supported on standard columns)."""
        return reduce_against(self.pivot_rows, vec, self.spec.field)

    def normal_form(self, amb_index: int) -> dict:
        """Memoized normal form of one ambient basis monomial, in std positions."""
        got = self._nf_cache.get(amb_index)
        if got is not None:
            return got
        K = self.spec.field
        row = self.pivot_rows.get(amb_index)
        if row is None:
            nf = {self.std_pos[amb_index]: K.one}
        else:
            nf = {self.std_pos[c]: K.neg(v) for c, v in row.items() if c != amb_index}
        self._nf_cache[amb_index] = nf
        return nf

    def coords_of(self, elem: AElement) -> dict:
        """Class of an A-element, as coordinates over the standard monomials."""
        K = self.spec.field
        out: dict = {}
        for mono, c in elem.terms.items():
            amb = self.ambient.index.get(mono)
            if amb is None:
                raise ValueError(f"monomial outside piece ({self.q},{self.l})")
            for pos, v in self.normal_form(amb).items():
                nv = K.add(out.get(pos, K.zero), K.mul(c, v))
                if nv == 0:
                    out.pop(pos, None)
                else:
                    out[pos] = nv
        return out


def ideal_piece(spec: RingSpec, q: int, l: int) -> IdealPiece:
    """Spanning rows of J cap A_q(l): every generator times every monomial."""
    if q < 0:
        return IdealPiece(q, l, SparseMatrix(0, 0, [], spec.field), [], [])
    ambient = spec.basis(q, l)
    rows = []
    for gen, (gq, gl), _name in jacobian_generators(spec):
        cq, cl = q - gq, l - gl
        if cq < 0:
            continue
        for mono in spec.basis(cq, cl):
            prod = {}
            K = spec.field
            for gm, gc in gen.terms.items():
                prod[ambient.index[mono_mul(gm, mono)]] = gc
            if prod:
                rows.append(prod)
    matrix = SparseMatrix.from_rows(rows, ambient.dim, spec.field)
    pivots, red = rref(matrix)
    return IdealPiece(q, l, matrix, pivots, red)


def quotient_piece(spec: RingSpec, q: int, l: int) -> QuotientPiece:
    key = (q, l)
    got = spec._pieces.get(key)
    if got is not None:
        return got
    if q < 0:
        piece = QuotientPiece(spec, q, l, spec.basis(q, l), [], [])
    else:
        ip = ideal_piece(spec, q, l)
        piece = QuotientPiece(spec, q, l, spec.basis(q, l), ip.pivots, ip.rows)
    with spec._lock:
        spec._pieces.setdefault(key, piece)
    return spec._pieces[key]


def dim_b(spec: RingSpec, q: int, l: int) -> int:
    return quotient_piece(spec, q, l).dim


class BElement:
    """Coordinates over the standard monomials of one quotient piece."""

    __slots__ = ("piece", "coords")

    def __init__(self, piece: QuotientPiece, coords: dict):
        self.piece = piece
        self.coords = coords

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        return (
            isinstance(other, BElement)
            and self.piece is other.piece
            and self.coords == other.coords
        )

    def lift(self) -> AElement:
        std = self.piece.standard
        mons = self.piece.ambient.monomials
        return AElement(self.piece.spec, self.piece.q, self.piece.l,
                        {mons[std[pos]]: c for pos, c in self.coords.items()})


def reduce_element(spec: RingSpec, elem: AElement) -> BElement:
    """Class of an A-element in its quotient piece."""
    if elem.q < 0:
        return BElement(quotient_piece(spec, elem.q, elem.l), {})
    piece = quotient_piece(spec, elem.q, elem.l)
    return BElement(piece, piece.coords_of(elem))


def b_multiply(x: BElement, y: BElement) -> BElement:
    """Product in the quotient ring; independent of the choice of lifts."""
    spec = x.piece.spec
    if spec is not y.piece.spec and spec != y.piece.spec:
        raise ValueError("operands live over different rings")
    K = spec.field
    target = quotient_piece(spec, x.piece.q + y.piece.q, x.piece.l + y.piece.l)
    out: dict = {}
    xs = x.piece.standard
    ys = y.piece.standard
    xm = x.piece.ambient.monomials
    ym = y.piece.ambient.monomials
    for i, ci in x.coords.items():
        mi = xm[xs[i]]
        for j, cj in y.coords.items():
            amb = target.ambient.index[mono_mul(mi, ym[ys[j]])]
            c = K.mul(ci, cj)
            for pos, v in target.normal_form(amb).items():
                nv = K.add(out.get(pos, K.zero), K.mul(c, v))
                if nv == 0:
                    out.pop(pos, None)
                else:
                    out[pos] = nv
    return BElement(target, out)


class TraceFunctional:
    """Coordinate functional on the unique standard socle monomial.

    The underlying linear form is canonical only up to a nonzero scalar; every
    rank/kernel/perfectness conclusion downstream is invariant under that
    choice, and this fixed normalization keeps outputs reproducible.
    """

    __slots__ = ("spec", "piece", "socle_monomial")

    def __init__(self, spec: RingSpec, piece: QuotientPiece):
        self.spec = spec
        self.piece = piece
        self.socle_monomial = piece.ambient.monomials[piece.standard[0]]

    def of_coords(self, coords: dict):
        return coords.get(0, self.spec.field.zero)

    def of_element(self, x: BElement):
        if x.piece is not self.piece:
            raise ValueError("element does not live in the socle piece")
        return self.of_coords(x.coords)

    def of_monomial_product(self, m1, m2):
        """tau of the class of a product of two ambient monomials."""
        amb = self.piece.ambient.index[mono_mul(m1, m2)]
        return self.piece.normal_form(amb).get(0, self.spec.field.zero)


def trace_functional(spec: RingSpec) -> TraceFunctional:
    """The functional spanning the dual of the 1-dimensional socle piece."""
    if spec._trace is not None:
        return spec._trace
    if spec.n - spec.r < 1:
        raise SocleError(f"socle construction needs n - r >= 1, got {spec.n - spec.r}")
    piece = quotient_piece(spec, spec.n - spec.r, spec.socle_twist)
    if piece.dim != 1:
        if piece.ambient.dim == 0:
            raise SocleError(
                f"socle piece B_{spec.n - spec.r}({spec.socle_twist}) is empty "
                "for these degrees; the trace pairing is degenerate here"
            )
        raise SocleError(
            f"socle piece B_{spec.n - spec.r}({spec.socle_twist}) has dimension "
            f"{piece.dim}, expected 1; the forms probably fail transversality"
        )
    spec._trace = TraceFunctional(spec, piece)
    return spec._trace


def smoothness_heuristic(spec: RingSpec) -> dict:
    """Socle-based transversality check; a pass is evidence, not a proof.

    Passes when the socle piece is 1-dimensional and the piece one bidegree
    above the socle vanishes (singular input leaves a tail there even when
    the socle degree itself looks fine, e.g. a cubic with one node).  This is
    evidence, not a certificate.
    """
    if spec.n - spec.r < 1:
        return {"pass": False, "reason": "needs n - r >= 1", "socle_dim": None}
    socle_dim = dim_b(spec, spec.n - spec.r, spec.socle_twist)
    result = {"socle_dim": socle_dim, "socle_twist": spec.socle_twist}
    if socle_dim != 1:
        ambient = spec.dim_ambient(spec.n - spec.r, spec.socle_twist)
        reason = (f"socle piece is empty for these degrees" if ambient == 0
                  else f"socle dimension {socle_dim} != 1")
        result.update({"pass": False, "reason": reason})
        return result
    above = dim_b(spec, spec.n - spec.r + 1, spec.socle_twist)
    result["above_socle_dim"] = above
    if above != 0:
        result.update({"pass": False,
                       "reason": f"piece above the socle has dimension {above} != 0"})
        return result
    result.update({"pass": True, "reason": "socle checks passed"})
    return result


def euler_relation_holds(spec: RingSpec) -> bool:
    """sum_k X_k eta_k == sum_i d_i F_i mu_i + sum_j e_j G_j lambda_j in A."""
    gens = jacobian_generators(spec)
    etas = [g for g, bd, _ in gens if bd == (1, -1)]
    lhs = AElement.zero(spec, 1, 0)
    for k, eta in enumerate(etas):
        xk = AElement.from_poly(spec, HomogPoly.variable(spec.n + 1, k, spec.field))
        lhs = lhs.add(a_multiply(xk, eta))
    rhs = AElement.zero(spec, 1, 0)
    for i, f in enumerate(spec.F):
        a = tuple(1 if t == i else 0 for t in range(spec.r))
        rhs = rhs.add(AElement.from_poly(spec, f.scale(f.degree), a=a))
    for j, g in enumerate(spec.G):
        b = tuple(1 if t == j else 0 for t in range(spec.s))
        rhs = rhs.add(AElement.from_poly(spec, g.scale(g.degree), b=b))
    return lhs == rhs


# -- the two companion rings used by the restriction ladder -------------------


def bbar_spec(spec: RingSpec) -> RingSpec:
    """Forget the first divisor: the ring of (F; G_2..G_s)."""
    if spec.s < 1:
        raise SpecError("ladder needs s >= 1")
    return RingSpec(spec.n, spec.F, spec.G[1:], spec.field, spec.assume_smooth)


def bprime_spec(spec: RingSpec) -> RingSpec:
    """Restrict to the first divisor: G_1 joins the complete intersection."""
    if spec.s < 1:
        raise SpecError("ladder needs s >= 1")
    return RingSpec(spec.n, spec.F + [spec.G[0]], spec.G[1:], spec.field,
                    spec.assume_smooth)


def _to_bprime_mono(spec: RingSpec, mono) -> tuple:
    a, b, x = mono
    return (a + (b[0],), b[1:], x)


def _from_bprime_mono(spec: RingSpec, mono) -> tuple:
    a, b, x = mono
    return (a[:-1], (a[-1],) + b, x)


def _from_bbar_mono(spec: RingSpec, mono) -> tuple:
    a, b, x = mono
    return (a, (0,) + b, x)


def lambda1_multiplication_rank(spec: RingSpec, q: int, l: int) -> dict:
    """Rank data of multiplication by lambda_1 from the restricted ring.

    The map sends the piece (q-1, bold_d + e_1 - n - 1 + l) of the restricted
    ring into B_q(bold_d - n - 1 + l); together with setting lambda_1 = 0 onto
    the forgetful ring it forms a short exact ladder, so the three sizes must
    satisfy dim B = rank + dim Bbar.
    """
    bp = bprime_spec(spec)
    src_twist = bp.bold_d - spec.n - 1 + l
    tgt_twist = spec.bold_d - spec.n - 1 + l
    src = quotient_piece(bp, q - 1, src_twist)
    tgt = quotient_piece(spec, q, tgt_twist)
    rows = []
    for pos in range(src.dim):
        mono = src.ambient.monomials[src.standard[pos]]
        a, b, x = _from_bprime_mono(spec, mono)
        image = (a, (b[0] + 1,) + b[1:], x)
        rows.append(tgt.coords_of(AElement(spec, q, tgt_twist,
                                           {image: spec.field.one})))
    rank = rank_certified(SparseMatrix.from_rows(rows, tgt.dim, spec.field))
    return {
        "source_dim": src.dim,
        "target_dim": tgt.dim,
        "rank": rank,
    }


def g1_multiplication_rank(spec: RingSpec, q: int, l: int) -> dict:
    """Rank of multiplication by G_1 from the forgetful ring into B_q(l)."""
    bb = bbar_spec(spec)
    src = quotient_piece(bb, q, l - spec.e[0])
    tgt = quotient_piece(spec, q, l)
    g1 = spec.G[0]
    rows = []
    for pos in range(src.dim):
        a, b, x = _from_bbar_mono(spec, src.ambient.monomials[src.standard[pos]])
        terms = {}
        for gx, gc in g1.terms.items():
            terms[(a, b, tuple(p + qq for p, qq in zip(x, gx)))] = gc
        rows.append(tgt.coords_of(AElement(spec, q, l, terms)))
    rank = rank_certified(SparseMatrix.from_rows(rows, tgt.dim, spec.field))
    return {"source_dim": src.dim, "target_dim": tgt.dim, "rank": rank}


def ladder_report(spec: RingSpec, q: int, l: int) -> dict:
    """Exactness bookkeeping for the two restriction sequences at twist l.

    Sequence one: multiply by lambda_1 into B_q(bold_d - n - 1 + l), then set
    lambda_1 = 0 onto the forgetful ring.  Sequence two (on the dual side):
    multiply by G_1 from the forgetful ring into B_{n-r-q}(bold_d + bold_e
    - n - 1 - l), then project onto the restricted ring.
    """
    if spec.s < 2:
        raise SpecError("ladder check needs s >= 2")
    bb = bbar_spec(spec)
    bp = bprime_spec(spec)
    t1 = spec.bold_d - spec.n - 1 + l
    seq1 = lambda1_multiplication_rank(spec, q, l)
    seq1["bbar_dim"] = dim_b(bb, q, t1)
    seq1["exact"] = seq1["target_dim"] == seq1["rank"] + seq1["bbar_dim"]

    q2 = spec.n - spec.r - q
    t2 = spec.bold_d + spec.bold_e - spec.n - 1 - l
    seq2 = g1_multiplication_rank(spec, q2, t2)
    seq2["bprime_dim"] = dim_b(bp, q2, t2)
    seq2["exact"] = seq2["target_dim"] == seq2["rank"] + seq2["bprime_dim"]
    return {
        "q": q,
        "l": l,
        "lambda1_sequence": seq1,
        "g1_sequence": seq2,
        "exact": seq1["exact"] and seq2["exact"],
    }
