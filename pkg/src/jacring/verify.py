"""The full invariant battery for one ring, used by the CLI and the tests.

Each check is independent and reports pass/fail with enough detail to chase a
failure.  A failing transversality heuristic aborts the battery (bad input);
a failing theorem-backed check counts as a violation (a bug, or an input the
heuristic wrongly admitted).
"""

from __future__ import annotations

import random
from itertools import combinations

from .duality import (
    CASE_INJECTIVE_TOP,
    CASE_UNCOVERED,
    dual_kernel_report,
    pairing_report,
    wedge_ideal_membership,
)
from .field import Field, random_prime
from .geom import curve_betti_identity, hodge_table, torelli_report
from .hilbert import hypersurface_dim_b
from .koszul import sweep as koszul_sweep
from .poly import verify_identity_star
from .ring import (
    RingSpec,
    dim_b,
    euler_relation_holds,
    ladder_report,
    smoothness_heuristic,
)


def duality_sweep(spec: RingSpec, thorough: bool = False) -> dict:
    """Perfectness where claimed, injectivity where claimed, defects elsewhere."""
    n, r, s = spec.n, spec.r, spec.s
    ps = range(0, max(n - r, 0) + 1)
    if s >= 1:
        ls = range(-2, spec.e_max + 3)
    else:
        ls = range(0, 2 if (thorough or spec.n <= 3) else 1)
    reports = []
    violations = []
    for p in ps:
        for l in ls:
            rep = pairing_report(spec, p, l)
            reports.append(rep.as_dict())
            if rep.case not in (CASE_UNCOVERED, CASE_INJECTIVE_TOP):
                if not rep.perfect:
                    violations.append(rep.as_dict())
            if rep.case == CASE_INJECTIVE_TOP and rep.kernel_left:
                violations.append(rep.as_dict())
    return {
        "pairs_swept": len(reports),
        "reports": reports,
        "violations": violations,
        "ok": not violations,
    }


def identity_star_battery(spec: RingSpec) -> dict:
    """The determinant identity over every admissible tuple of divisor forms."""
    m = spec.n - spec.r + 1
    checked = 0
    failures = []
    if 1 <= m <= spec.s:
        for combo in combinations(range(spec.s), m):
            forms = spec.F + [spec.G[j] for j in combo]
            checked += 1
            if not verify_identity_star(forms):
                failures.append([j + 1 for j in combo])
    return {"checked": checked, "failures": failures, "ok": not failures}


def hilbert_battery(spec: RingSpec) -> dict:
    """For one hypersurface (r=1, s=0): dims against the series oracle."""
    rows = []
    ok = True
    for q in range(0, spec.n - spec.r + 2):
        for l in (0, 1):
            got = dim_b(spec, q, l)
            want = hypersurface_dim_b(spec.n, spec.d[0], q, l)
            rows.append({"q": q, "l": l, "dim": got, "oracle": want})
            ok = ok and got == want
    return {"rows": rows, "ok": ok}


def cross_characteristic_battery(spec: RingSpec, seed: int, trials: int = 2) -> dict:
    """Key dimensions recomputed over `trials` random large prime fields."""
    if not spec.field.is_rationals:
        return {"skipped": "input already lives over a prime field", "ok": True}
    rng = random.Random(seed)
    targets = [(q, spec.bold_d + spec.bold_e - spec.n - 1)
               for q in range(0, spec.n - spec.r + 1)]
    targets.append((spec.n - spec.r, spec.socle_twist))
    targets.append((1, 0))
    rational = {f"{q},{l}": dim_b(spec, q, l) for q, l in targets}
    primes = []
    agree = True
    per_prime = {}
    for _ in range(trials):
        p = random_prime(rng)
        primes.append(p)
        mod_spec = RingSpec(spec.n, spec.F, spec.G, Field.prime(p),
                            assume_smooth=spec.assume_smooth)
        dims = {f"{q},{l}": dim_b(mod_spec, q, l) for q, l in targets}
        per_prime[str(p)] = dims
        agree = agree and dims == rational
    return {"rational": rational, "primes": primes, "per_prime": per_prime,
            "ok": agree}


def run_verify(spec: RingSpec, seed: int = 0, thorough: bool = False) -> dict:
    checks = []
    heuristic = smoothness_heuristic(spec)
    doc = {"heuristic": heuristic, "checks": checks, "violations": 0}
    if not heuristic["pass"] and not spec.assume_smooth:
        doc["input_ok"] = False
        return doc
    doc["input_ok"] = True

    def add(name, ok, **details):
        checks.append({"name": name, "ok": bool(ok), **details})
        if not ok:
            doc["violations"] += 1

    add("euler-relation", euler_relation_holds(spec))

    du = duality_sweep(spec, thorough=thorough)
    add("duality-sweep", du["ok"], pairs_swept=du["pairs_swept"],
        violations=du["violations"])

    if spec.n - spec.r >= 1 and spec.s >= 1:
        k2 = dual_kernel_report(spec)
        add("dual-kernel-vs-wedge", k2["equal"] and k2["surjective"]
            and k2["kernel_dim"] == k2["expected_kernel_dim"],
            kernel_dim=k2["kernel_dim"], wedge_span_dim=k2["wedge_span_dim"],
            expected=k2["expected_kernel_dim"], surjective=k2["surjective"])
        mem = wedge_ideal_membership(spec)
        add("wedge-ideal-membership", mem["ok"], checked=mem["checked"],
            failures=mem["failures"])

    star = identity_star_battery(spec)
    if star["checked"]:
        add("derivative-identity", star["ok"], checked=star["checked"],
            failures=star["failures"])

    l_lo = spec.bold_d - spec.n - 1
    l_hi = spec.bold_d + spec.bold_e - spec.n - 2
    if spec.s >= 1 and l_lo <= l_hi:
        reports = koszul_sweep(
            spec, range(0, 3), range(0, 3), range(l_lo, l_hi + 1),
            [("full",), ("codim", 1), ("codim", 2)], seed=seed)
        bad = [r for r in reports if r["violation"]]
        add("koszul-sweep", not bad, instances=len(reports),
            asserted=sum(1 for r in reports if r["exactness_asserted"]),
            violations=bad)

    if spec.n - spec.r >= 1:
        trows = [torelli_report(spec, q) for q in range(1, spec.n - spec.r + 1)]
        add("torelli-surjectivity",
            all(r["surjective"] for r in trows if r["predicate"]),
            rows=trows)

    if spec.s >= 2:
        ladder_ok = True
        ladder_rows = []
        for q in range(0, spec.n - spec.r + 1):
            for l in (0, 1):
                rep = ladder_report(spec, q, l)
                ladder_rows.append(rep)
                ladder_ok = ladder_ok and rep["exact"]
        add("restriction-ladder", ladder_ok, rows=ladder_rows)

    if spec.r == 1 and spec.s == 0:
        hb = hilbert_battery(spec)
        add("hilbert-series-oracle", hb["ok"], rows=hb["rows"])

    if spec.n == 2 and spec.r == 1 and spec.s >= 1:
        cb = curve_betti_identity(spec)
        add("curve-betti-identity", cb["equal"], **cb)

    cc = cross_characteristic_battery(spec, seed)
    add("cross-characteristic", cc["ok"],
        **{k: v for k, v in cc.items() if k != "ok"})

    doc["hodge"] = hodge_table(spec, 0)
    return doc
