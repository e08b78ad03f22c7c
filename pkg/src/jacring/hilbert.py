"""Independent dimension oracles from Hilbert series.

Everything here works with plain integer coefficient lists, never touching
the linear-algebra path it is used to cross-check.  The closed formulas only
cover the classical single-hypersurface case (r = 1, s = 0), which is exactly
where an independent count is available.
"""

from __future__ import annotations

from math import comb


def series_mul(a: list[int], b: list[int], truncate: int) -> list[int]:
    out = [0] * (truncate + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > truncate:
            continue
        for j, bj in enumerate(b):
            if i + j > truncate:
                break
            out[i + j] += ai * bj
    return out


def series_pow(base: list[int], exponent: int, truncate: int) -> list[int]:
    out = [1]
    for _ in range(exponent):
        out = series_mul(out, base, truncate)
    return out


def milnor_dims(n: int, d: int, truncate: int) -> list[int]:
    """Coefficients of ((1 - z^(d-1)) / (1 - z))^(n+1) up to z^truncate."""
    base = [1] * (d - 1)  # 1 + z + ... + z^(d-2)
    return series_pow(base, n + 1, truncate)


def hypersurface_dim_b(n: int, d: int, q: int, l: int) -> int:
    """dim B_q(l) for one smooth degree-d hypersurface in P^n (r=1, s=0).

    For q = 0 this is the codimension of F * P^(l-d) in P^l; for q >= 1 the
    graded piece of the quotient by the partial-derivative ideal in degree
    q*d + l.
    """
    if q < 0:
        return 0
    if q == 0:
        if l < 0:
            return 0
        dim = comb(n + l, n)
        if l >= d:
            dim -= comb(n + l - d, n)
        return dim
    deg = q * d + l
    if deg < 0:
        return 0
    coeffs = milnor_dims(n, d, deg)
    return coeffs[deg] if deg < len(coeffs) else 0


def plane_curve_genus(d: int) -> int:
    return (d - 1) * (d - 2) // 2
