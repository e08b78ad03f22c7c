"""Exact sparse linear algebra over the rationals or a prime field.

Rows are dicts {column: nonzero scalar}.  Everything is driven by a single
canonical reduced-row-echelon routine: the RREF of a row space is unique for
the fixed ambient column order, so ranks, kernels and normal forms come out
deterministic no matter how pivots were chosen along the way.

Rational elimination runs on a fraction-free integer core (cross-multiplied
updates, rows divided by their content) and converts to leading-1 form only
at the end; the output is the same canonical RREF the naive Fraction sweep
would produce, just much faster.  Rank-only queries first try one fixed
large prime: a modular rank ceiling-matches min(rows, cols) often, and in
that case the rational rank is certified without touching big integers.
"""

from __future__ import annotations

import heapq
import random
from fractions import Fraction
from math import gcd

from .field import Field, FieldError, QQ, random_prime

# Fixed certification prime (Mersenne, < 2^62).  If it happens to divide a
# minor the shortcut simply falls back to exact elimination; never wrong.
_CERT_PRIME = 2**61 - 1


class SparseMatrix:
    """Immutable-by-convention sparse matrix with no stored zeros."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, rows: int, cols: int, data: list[dict], field: Field = QQ):
        self.rows = rows
        self.cols = cols
        self.data = data
        self.field = field

    @classmethod
    def from_rows(cls, row_dicts, cols: int, field: Field = QQ) -> "SparseMatrix":
        data = []
        for r in row_dicts:
            clean = {}
            for c, v in r.items():
                if not 0 <= c < cols:
                    raise ValueError(f"column {c} out of range 0..{cols - 1}")
                if v != 0:
                    clean[c] = v
            data.append(clean)
        return cls(len(data), cols, data, field)

    @classmethod
    def from_dense(cls, dense, field: Field = QQ) -> "SparseMatrix":
        cols = len(dense[0]) if dense else 0
        rows = [
            {j: field.coerce(v) for j, v in enumerate(row) if v != 0}
            for row in dense
        ]
        return cls(len(rows), cols, rows, field)

    def entries(self):
        for i, row in enumerate(self.data):
            for j, v in row.items():
                yield i, j, v

    def transpose(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.cols)]
        for i, j, v in self.entries():
            cols[j][i] = v
        return SparseMatrix(self.cols, self.rows, cols, self.field)

    def matvec(self, vec: dict) -> dict:
        K = self.field
        out = {}
        for i, row in enumerate(self.data):
            acc = K.zero
            for c, v in row.items():
                x = vec.get(c)
                if x is not None:
                    acc = K.add(acc, K.mul(v, x))
            if acc != 0:
                out[i] = acc
        return out


def _content_normalize(row: dict) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g


def _integer_rows(data: list[dict]) -> list[dict]:
    """Scale each rational row to a content-free integer vector."""
    out = []
    for r in data:
        if not r:
            out.append({})
            continue
        lcm = 1
        for v in r.values():
            d = v.denominator
            lcm = lcm * d // gcd(lcm, d)
        row = {c: int(v * lcm) for c, v in r.items()}
        _content_normalize(row)
        out.append(row)
    return out


def _eliminate(work: list[dict], subtract) -> list[tuple[int, int]]:
    """Shared sweep: pick sparse pivots, clear their columns, then back-sweep.

    `subtract(target, f, pivot_row, pivot_value)` must remove the pivot
    column from target (scaling target is allowed) and return the columns
    whose zero/nonzero state flipped.  Returns (pivot col, row id) pairs in
    increasing pivot-column order; `work` rows end up fully reduced but not
    pivot-normalized.
    """
    col_rows: dict[int, set[int]] = {}
    heap: list[tuple[int, int]] = []
    for i, row in enumerate(work):
        if row:
            heapq.heappush(heap, (len(row), i))
            for c in row:
                col_rows.setdefault(c, set()).add(i)

    processed: list[tuple[int, int]] = []
    done: set[int] = set()
    while heap:
        ln, i = heapq.heappop(heap)
        if i in done:
            continue
        row = work[i]
        if not row:
            done.add(i)
            continue
        if ln != len(row):  # stale entry
            heapq.heappush(heap, (len(row), i))
            continue
        pc = min(row, key=lambda c: (len(col_rows[c]), c))
        pv = row[pc]
        for j in list(col_rows[pc]):
            if j == i or j in done:
                continue
            other = work[j]
            f = other.get(pc)
            if f is None:
                continue
            for c in subtract(other, f, row, pv):
                if c in other:
                    col_rows.setdefault(c, set()).add(j)
                else:
                    col_rows[c].discard(j)
            if other:
                heapq.heappush(heap, (len(other), j))
        for c in row:
            col_rows[c].discard(i)
        done.add(i)
        processed.append((pc, i))

    # Each processed row is free of earlier pivots but may contain later
    # ones; sweeping in reverse order leaves a fully reduced form.
    rank_of = {i: t for t, (_, i) in enumerate(processed)}
    pcol_rows: dict[int, set[int]] = {}
    for _, i in processed:
        for c in work[i]:
            pcol_rows.setdefault(c, set()).add(i)
    for t in range(len(processed) - 1, -1, -1):
        pc, i = processed[t]
        row = work[i]
        pv = row[pc]
        for j in list(pcol_rows.get(pc, ())):
            if rank_of[j] >= t:
                continue
            urow = work[j]
            f = urow.get(pc)
            if f is None:
                continue
            for c in subtract(urow, f, row, pv):
                if c in urow:
                    pcol_rows.setdefault(c, set()).add(j)
                else:
                    pcol_rows[c].discard(j)
    return sorted(processed)


def _rref_rational(matrix: SparseMatrix) -> tuple[list[int], list[dict]]:
    work = _integer_rows(matrix.data)

    def subtract(target: dict, f: int, src: dict, pv: int) -> list:
        # target = pv*target - f*src, then divide out the content
        flipped = []
        for c in target:
            target[c] *= pv
        for c, v in src.items():
            nv = target.get(c, 0) - f * v
            if nv == 0:
                if c in target:
                    del target[c]
                    flipped.append(c)
            else:
                if c not in target:
                    flipped.append(c)
                target[c] = nv
        _content_normalize(target)
        return flipped

    order = _eliminate(work, subtract)
    pivots = [pc for pc, _ in order]
    rows = []
    for pc, i in order:
        row = work[i]
        pv = row[pc]
        rows.append({c: Fraction(v, pv) for c, v in row.items()})
    return pivots, rows


def _rref_prime(matrix: SparseMatrix) -> tuple[list[int], list[dict]]:
    p = matrix.field.p
    work = [dict(r) for r in matrix.data]

    def subtract(target: dict, f: int, src: dict, pv: int) -> list:
        flipped = []
        scale = f * pow(pv, -1, p) % p
        for c, v in src.items():
            nv = (target.get(c, 0) - scale * v) % p
            if nv == 0:
                if c in target:
                    del target[c]
                    flipped.append(c)
            else:
                if c not in target:
                    flipped.append(c)
                target[c] = nv
        return flipped

    order = _eliminate(work, subtract)
    pivots = [pc for pc, _ in order]
    rows = []
    for pc, i in order:
        row = work[i]
        inv = pow(row[pc], -1, p)
        rows.append({c: v * inv % p for c, v in row.items()})
    return pivots, rows


def rref(matrix: SparseMatrix) -> tuple[list[int], list[dict]]:
    """Canonical RREF of the row space.

    Returns (pivot_columns, rows) with pivot columns strictly increasing,
    each row normalized to a leading 1 and fully reduced (no pivot column
    occurs in any other row).  Pivot selection is Markowitz-flavoured
    (sparsest row first, then its column with fewest live occurrences, ties
    broken by lowest index); the returned form does not depend on it.
    """
    if matrix.field.is_rationals:
        return _rref_rational(matrix)
    return _rref_prime(matrix)


def _rank_prime_forward(matrix: SparseMatrix) -> int:
    """Rank over GF(p) by forward elimination only (no reduced form)."""
    p = matrix.field.p
    work = [dict(r) for r in matrix.data]
    col_rows: dict[int, set[int]] = {}
    heap: list[tuple[int, int]] = []
    for i, row in enumerate(work):
        if row:
            heapq.heappush(heap, (len(row), i))
            for c in row:
                col_rows.setdefault(c, set()).add(i)
    pivots = 0
    done: set[int] = set()
    while heap:
        ln, i = heapq.heappop(heap)
        if i in done:
            continue
        row = work[i]
        if not row:
            done.add(i)
            continue
        if ln != len(row):
            heapq.heappush(heap, (len(row), i))
            continue
        pc = min(row, key=lambda c: (len(col_rows[c]), c))
        inv = pow(row[pc], -1, p)
        if inv != 1:
            for c in row:
                row[c] = row[c] * inv % p
        for j in list(col_rows[pc]):
            if j == i or j in done:
                continue
            other = work[j]
            f = other.get(pc)
            if f is None:
                continue
            for c, v in row.items():
                nv = (other.get(c, 0) - f * v) % p
                if nv == 0:
                    if c in other:
                        del other[c]
                        col_rows[c].discard(j)
                else:
                    if c not in other:
                        col_rows.setdefault(c, set()).add(j)
                    other[c] = nv
            if other:
                heapq.heappush(heap, (len(other), j))
        for c in row:
            col_rows[c].discard(i)
        done.add(i)
        pivots += 1
    return pivots


def rank(matrix: SparseMatrix) -> int:
    return len(rref(matrix)[0])


def rank_certified(matrix: SparseMatrix) -> int:
    """Exact rank, shortcutting through one fixed prime when it certifies.

    The modular rank never exceeds the rational one, so hitting the
    min(rows, cols) ceiling proves equality; anything less falls back to
    exact elimination.  Deterministic: the probe prime is fixed.  Wide
    matrices are eliminated transposed (rank is orientation-free and the
    sparser rows produce far less fill).
    """
    if not matrix.field.is_rationals:
        return rank(matrix)
    ceiling = min(matrix.rows, matrix.cols)
    if ceiling == 0:
        return 0
    oriented = matrix if matrix.rows >= matrix.cols else matrix.transpose()
    try:
        probe = _rank_prime_forward(_reduce_matrix_mod(oriented, _CERT_PRIME))
    except FieldError:
        probe = -1
    if probe == ceiling:
        return probe
    return len(rref(oriented)[0])


def _kernel_from_rref(pivots: list[int], rows: list[dict], cols: int, K: Field) -> list[dict]:
    pivot_set = set(pivots)
    contrib: dict[int, list] = {}
    for pc, row in zip(pivots, rows):
        for c, v in row.items():
            if c not in pivot_set:
                contrib.setdefault(c, []).append((pc, v))
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        vec = {f: K.one}
        for pc, v in contrib.get(f, ()):
            vec[pc] = K.neg(v)
        basis.append(vec)
    return basis


def kernel_basis(matrix: SparseMatrix) -> list[dict]:
    """Basis of {v : M v = 0}, one vector per free column, canonical."""
    pivots, rows = rref(matrix)
    return _kernel_from_rref(pivots, rows, matrix.cols, matrix.field)


def rank_and_kernel(matrix: SparseMatrix) -> tuple[int, list[dict]]:
    pivots, rows = rref(matrix)
    basis = _kernel_from_rref(pivots, rows, matrix.cols, matrix.field)
    assert len(pivots) + len(basis) == matrix.cols
    return len(pivots), basis


def reduce_against(pivot_rows: dict[int, dict], vec: dict, field: Field) -> dict:
    """Normal form of vec modulo RREF rows indexed by their pivot column."""
    out = dict(vec)
    for c in [c for c in out if c in pivot_rows]:
        f = out.get(c)
        if f is None or f == 0:
            continue
        for cc, v in pivot_rows[c].items():
            nv = field.sub(out.get(cc, field.zero), field.mul(f, v))
            if nv == 0:
                out.pop(cc, None)
            else:
                out[cc] = nv
    return out


def in_span(matrix: SparseMatrix, vec: dict | list) -> bool:
    """True iff vec lies in the row span of matrix."""
    if isinstance(vec, list):
        if len(vec) != matrix.cols:
            raise ValueError(f"vector length {len(vec)} != cols {matrix.cols}")
        vec = {i: v for i, v in enumerate(vec) if v != 0}
    elif vec and max(vec) >= matrix.cols:
        raise ValueError("vector has entries beyond column count")
    pivots, rows = rref(matrix)
    table = dict(zip(pivots, rows))
    return not reduce_against(table, vec, matrix.field)


def _reduce_matrix_mod(matrix: SparseMatrix, p: int) -> SparseMatrix:
    Fp = Field(p)
    data = []
    for row in matrix.data:
        out = {}
        for c, v in row.items():
            r = Fp.coerce(v)  # raises FieldError if p divides a denominator
            if r != 0:
                out[c] = r
        data.append(out)
    return SparseMatrix(matrix.rows, matrix.cols, data, Fp)


def modular_rank_probe(matrix: SparseMatrix, trials: int, seed: int) -> dict:
    """Rank of a rational matrix modulo `trials` random primes in (2^50, 2^62).

    Primes dividing a denominator in the matrix are discarded and resampled.
    The max observed rank never exceeds the rank over the rationals, with
    equality unless every sampled prime divides a fixed nonzero minor.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not matrix.field.is_rationals:
        raise ValueError("modular probe expects a rational matrix")
    rng = random.Random(seed)
    oriented = matrix if matrix.rows >= matrix.cols else matrix.transpose()
    ranks = []
    primes = []
    while len(ranks) < trials:
        p = random_prime(rng)
        try:
            mp = _reduce_matrix_mod(oriented, p)
        except FieldError:
            continue
        primes.append(p)
        ranks.append(_rank_prime_forward(mp))
    return {
        "rank": max(ranks),
        "agree": len(set(ranks)) == 1,
        "ranks": ranks,
        "primes": primes,
    }
