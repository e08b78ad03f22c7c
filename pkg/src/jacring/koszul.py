"""Koszul complexes built from a subspace V of B_1(0), and their exactness.

For V spanned inside B_1(0) the three-term complex

    B_p(l) (x) wedge^{q+1} V  ->  B_{p+1}(l) (x) wedge^q V
                              ->  B_{p+2}(l) (x) wedge^{q-1} V

has differential x (x) (v_0 ^ .. ^ v_q) -> sum_i (-1)^i (x v_i) (x) (.. no
v_i ..); the sign convention is a choice, homology dimensions do not depend
on it.  Exactness of the middle is asserted only where the numeric side
conditions below hold, everything else is reported as data.
"""

from __future__ import annotations

import random
from itertools import combinations

from .linalg import SparseMatrix, rank_certified, rref
from .ring import BElement, RingSpec, b_multiply, dim_b, quotient_piece


class KoszulInstance:
    """A ring, an echelonized subspace V of B_1(0), and a position (p, q, l)."""

    def __init__(self, spec: RingSpec, vectors: list[dict], p: int, q: int, l: int):
        self.spec = spec
        self.p = p
        self.q = q
        self.l = l
        self.b1 = quotient_piece(spec, 1, 0)
        mat = SparseMatrix.from_rows([dict(v) for v in vectors], self.b1.dim,
                                     spec.field)
        _, rows = rref(mat)
        self.v_basis = rows  # echelonized, canonical
        self.codim = self.b1.dim - len(rows)

    @property
    def v_dim(self) -> int:
        return len(self.v_basis)

    def v_element(self, t: int) -> BElement:
        return BElement(self.b1, dict(self.v_basis[t]))


def full_b1_instance(spec: RingSpec, p: int, q: int, l: int) -> KoszulInstance:
    b1 = quotient_piece(spec, 1, 0)
    vectors = [{i: spec.field.one} for i in range(b1.dim)]
    return KoszulInstance(spec, vectors, p, q, l)


def random_subspace_instance(spec: RingSpec, codim: int, seed: int,
                             p: int, q: int, l: int) -> KoszulInstance:
    """A random subspace of the requested codimension (seeded, retried)."""
    b1 = quotient_piece(spec, 1, 0)
    want = b1.dim - codim
    if want < 0:
        raise ValueError(f"codimension {codim} exceeds dim B_1(0) = {b1.dim}")
    rng = random.Random(seed)
    for _ in range(64):
        vectors = []
        for _ in range(want):
            vec = {}
            for i in range(b1.dim):
                c = rng.randint(-9, 9)
                if c:
                    vec[i] = spec.field.coerce(c)
            vectors.append(vec)
        inst = KoszulInstance(spec, vectors, p, q, l)
        if inst.v_dim == want:
            return inst
    raise RuntimeError("could not sample a subspace of the requested rank")


def _wedge_tuples(dim: int, k: int) -> list[tuple]:
    if k < 0 or k > dim:
        return []
    return list(combinations(range(dim), k))


def differential(inst: KoszulInstance, stage: int) -> SparseMatrix:
    """Matrix of the stage-1 or stage-2 map, columns = source basis."""
    if stage not in (1, 2):
        raise ValueError("stage is 1 or 2")
    spec = inst.spec
    p = inst.p + (stage - 1)
    wedge_k = inst.q + 2 - stage  # source wedge power
    src_piece = quotient_piece(spec, p, inst.l)
    tgt_piece = quotient_piece(spec, p + 1, inst.l)
    src_wedges = _wedge_tuples(inst.v_dim, wedge_k)
    tgt_wedges = _wedge_tuples(inst.v_dim, wedge_k - 1)
    tgt_index = {w: i for i, w in enumerate(tgt_wedges)}
    n_rows = tgt_piece.dim * len(tgt_wedges)
    n_cols = src_piece.dim * len(src_wedges)
    rows = [dict() for _ in range(n_rows)]
    # cache products (standard monomial of source piece) * v_t
    prod_cache: dict[tuple[int, int], dict] = {}
    for wi, wedge in enumerate(src_wedges):
        for pos_i in range(src_piece.dim):
            col = wi * src_piece.dim + pos_i
            for drop, t in enumerate(wedge):
                rest = wedge[:drop] + wedge[drop + 1:]
                ti = tgt_index[rest]
                key = (pos_i, t)
                prod = prod_cache.get(key)
                if prod is None:
                    x = BElement(src_piece, {pos_i: spec.field.one})
                    prod = b_multiply(x, inst.v_element(t)).coords
                    prod_cache[key] = prod
                sign = -1 if drop % 2 else 1
                for pos_j, v in prod.items():
                    row = rows[ti * tgt_piece.dim + pos_j]
                    nv = spec.field.add(row.get(col, spec.field.zero),
                                        v if sign > 0 else spec.field.neg(v))
                    if nv == 0:
                        row.pop(col, None)
                    else:
                        row[col] = nv
    return SparseMatrix(n_rows, n_cols, rows, spec.field)


def exactness_conditions(spec: RingSpec, p: int, q: int, l: int, c: int) -> list[str]:
    """Which of the three numeric exactness conditions hold (s >= 1, p >= 0)."""
    if spec.s < 1 or p < 0:
        return []
    held = []
    dmin = spec.delta_min
    if q == 0 and dmin * p + l >= c:
        held.append("i")
    if q == 1 and dmin * p + l >= 1 + c and dmin * (p + 1) + l >= spec.d_max + c:
        held.append("ii")
    bd, be = spec.bold_d, spec.bold_e
    if (dmin * (spec.r + p) + l >= bd + q + c
            and bd + spec.e_max - spec.n - 1 > l >= bd - spec.n - 1
            and (spec.r + spec.s <= spec.n + 2 or p <= spec.n - spec.r - q // 2)):
        held.append("iii")
    return held


def uncontrolled_regime(spec: RingSpec, p: int, q: int, l: int) -> bool:
    """The reported-only corner: homology there is data, never an assertion."""
    return (q >= 2 and l == spec.bold_d - spec.n - 1
            and spec.r + spec.s > spec.n + 2 and p == spec.n - spec.r - 1)


def middle_homology(inst: KoszulInstance) -> dict:
    spec = inst.spec
    d1 = differential(inst, 1)
    d2 = differential(inst, 2)
    rank1 = rank_certified(d1)
    rank2 = rank_certified(d2)
    dims = [d1.cols, d1.rows, d2.rows]
    assert d2.cols == d1.rows
    homology = (d1.rows - rank2) - rank1
    conditions = exactness_conditions(spec, inst.p, inst.q, inst.l, inst.codim)
    report = {
        "p": inst.p,
        "q": inst.q,
        "l": inst.l,
        "codim": inst.codim,
        "v_dim": inst.v_dim,
        "dims": dims,
        "rank_first": rank1,
        "rank_second": rank2,
        "middle_homology_dim": homology,
        "conditions": conditions,
        "exactness_asserted": bool(conditions),
        "uncontrolled_regime": uncontrolled_regime(spec, inst.p, inst.q, inst.l),
        "violation": bool(conditions) and homology != 0,
    }
    if homology < 0:
        raise AssertionError("image not contained in kernel: differential bug")
    return report


def composition_is_zero(inst: KoszulInstance) -> bool:
    """d o d == 0, checked exactly entry by entry."""
    d1 = differential(inst, 1)
    d2 = differential(inst, 2)
    K = inst.spec.field
    d1_cols: dict[int, dict] = {}
    for i, row in enumerate(d1.data):
        for c, v in row.items():
            d1_cols.setdefault(c, {})[i] = v
    for col, vec in d1_cols.items():
        out = d2.matvec(vec)
        if out:
            return False
    return True


def sweep(spec: RingSpec, p_range, q_range, l_range, v_modes, seed: int = 0) -> list[dict]:
    """One homology report per (p, q, l, V); flags any asserted-but-nonzero.

    v_modes entries: ("full",), ("codim", c) or ("vectors", list-of-dicts).
    """
    reports = []
    b1_dim = dim_b(spec, 1, 0)
    for mode in v_modes:
        if mode[0] == "codim" and mode[1] > b1_dim:
            continue  # no subspace of that codimension exists
        for p in p_range:
            for q in q_range:
                for l in l_range:
                    if mode[0] == "full":
                        inst = full_b1_instance(spec, p, q, l)
                        v_label = "full"
                    elif mode[0] == "codim":
                        inst = random_subspace_instance(spec, mode[1], seed, p, q, l)
                        v_label = f"codim-{mode[1]}"
                    else:
                        inst = KoszulInstance(spec, mode[1], p, q, l)
                        v_label = "explicit"
                    rep = middle_homology(inst)
                    rep["v_mode"] = v_label
                    reports.append(rep)
    return reports
