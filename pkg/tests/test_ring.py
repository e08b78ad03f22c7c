import random

import pytest

from jacring.field import Field, QQ, random_prime
from jacring.graded import AElement, a_multiply, mono_to_str
from jacring.hilbert import hypersurface_dim_b
from jacring.linalg import in_span
from jacring.parser import parse_poly
from jacring.ring import (
    BElement,
    RingSpec,
    SocleError,
    SpecError,
    b_multiply,
    bbar_spec,
    bprime_spec,
    dim_b,
    euler_relation_holds,
    ideal_piece,
    jacobian_generators,
    ladder_report,
    quotient_piece,
    reduce_element,
    smoothness_heuristic,
    trace_functional,
)
from jacring.specfile import preset


def conic_spec():
    # conic plus the lines x0 = 0 and x1 = 0: eta0 = 2 x0 mu + lambda1, etc.
    return preset("conic-two-lines").to_ringspec()


def test_spec_validation():
    with pytest.raises(SpecError):
        RingSpec(1, [parse_poly("x0^2", 1)], [])
    with pytest.raises(SpecError):
        RingSpec(2, [], [])
    with pytest.raises(SpecError):
        RingSpec(2, [parse_poly("x0^2 - x0^2", 2)], [])
    over = RingSpec(2, [parse_poly("x0^2", 2), parse_poly("x1^2", 2),
                        parse_poly("x2^2", 2)], [])
    assert over.warnings  # r > n is allowed but flagged


def test_generators_conic():
    spec = conic_spec()
    gens = {name: (g, bd) for g, bd, name in jacobian_generators(spec)}
    assert set(gens) == {"eta0", "eta1", "eta2", "F1",
                         "G1*lambda1", "G2*lambda2"}
    eta0, bd = gens["eta0"]
    assert bd == (1, -1)
    assert eta0.terms == {((1,), (0, 0), (1, 0, 0)): 2,
                          ((0,), (1, 0), (0, 0, 0)): 1}
    eta2, _ = gens["eta2"]
    assert eta2.terms == {((1,), (0, 0), (0, 0, 1)): 2}
    assert gens["F1"][1] == (0, 2)
    assert gens["G1*lambda1"][1] == (1, 0)


def test_generators_fermat_quartic():
    spec = preset("fermat-quartic").to_ringspec()
    gens = [(g, bd) for g, bd, name in jacobian_generators(spec)
            if name.startswith("eta")]
    assert len(gens) == 4
    for k, (g, bd) in enumerate(gens):
        e = [0, 0, 0, 0]
        e[k] = 3
        assert g.terms == {((1,), (), tuple(e)): 4}
        assert bd == (1, -1)


def test_ideal_piece_examples():
    spec = preset("fermat-quartic").to_ringspec()
    ip = ideal_piece(spec, 1, 0)
    assert ip.rank == 16
    conic = conic_spec()
    ip2 = ideal_piece(conic, 1, -1)
    assert ip2.span_matrix.rows == 3 and ip2.rank == 3
    # empty ambient piece
    ip3 = ideal_piece(conic, 0, -1)
    assert ip3.rank == 0 and ip3.span_matrix.cols == 0


def test_quotient_dims_fermat():
    spec = preset("fermat-quartic").to_ringspec()
    assert dim_b(spec, 1, 0) == 35 - 16 == 19
    quintic = preset("fermat-quintic").to_ringspec()
    assert dim_b(quintic, 1, 0) == 101


def test_quotient_dims_elliptic_line():
    spec = preset("elliptic-line").to_ringspec()
    assert dim_b(spec, 0, 1) == 3
    assert dim_b(spec, 1, 0) == 3
    assert dim_b(spec, 1, 1) == 1


def test_reduce_ideal_elements_vanish():
    spec = conic_spec()
    gens = jacobian_generators(spec)
    eta0 = gens[0][0]
    x2 = AElement.from_poly(spec, parse_poly("x2", 2))
    assert reduce_element(spec, a_multiply(eta0, x2)).is_zero
    assert reduce_element(spec, AElement.zero(spec, 1, 0)).is_zero
    # x2*lambda1 = eta0*x2 - x0*eta2 modulo scalars, so its class is zero
    x2l1 = AElement.from_terms(spec, {((0,), (1, 0), (0, 0, 1)): 1})
    assert reduce_element(spec, x2l1).is_zero


def test_b_multiply_unit_and_commutativity():
    spec = preset("elliptic-line").to_ringspec()
    one_piece = quotient_piece(spec, 0, 0)
    assert one_piece.dim == 1
    one = BElement(one_piece, {0: QQ.one})
    rng = random.Random(7)
    piece = quotient_piece(spec, 1, 0)
    for _ in range(5):
        coords = {i: QQ.coerce(rng.randint(-4, 4)) for i in range(piece.dim)}
        coords = {i: c for i, c in coords.items() if c != 0}
        x = BElement(piece, coords)
        assert b_multiply(one, x).coords == x.coords
        y = BElement(piece, {rng.randrange(piece.dim): QQ.coerce(rng.randint(1, 5))})
        assert b_multiply(x, y).coords == b_multiply(y, x).coords


def test_b_multiply_lift_independence():
    spec = conic_spec()
    piece = quotient_piece(spec, 1, 0)
    ip = ideal_piece(spec, 1, 0)
    rng = random.Random(13)
    other = quotient_piece(spec, 0, 1)
    for _ in range(5):
        x = BElement(piece, {0: QQ.coerce(rng.randint(1, 5))})
        # same class, different ambient representative
        lift = x.lift()
        noise_row = ip.span_matrix.data[rng.randrange(ip.span_matrix.rows)]
        noisy = dict(lift.terms)
        for col, v in noise_row.items():
            mono = piece.ambient.monomials[col]
            noisy[mono] = QQ.add(noisy.get(mono, QQ.zero), v)
        lift2 = AElement.from_terms(spec, noisy)
        y = BElement(other, {rng.randrange(other.dim): QQ.one})
        p1 = b_multiply(x, y)
        p2 = b_multiply(reduce_element(spec, lift2), y)
        assert p1.coords == p2.coords


def test_b_multiply_associative():
    spec = conic_spec()
    rng = random.Random(31)
    a_piece = quotient_piece(spec, 0, 1)
    b_piece = quotient_piece(spec, 0, 1)
    c_piece = quotient_piece(spec, 1, -1)
    for _ in range(5):
        def pick(piece):
            coords = {i: QQ.coerce(rng.randint(-3, 3)) for i in range(piece.dim)}
            return BElement(piece, {i: c for i, c in coords.items() if c != 0})
        x, y, z = pick(a_piece), pick(b_piece), pick(c_piece)
        assert b_multiply(b_multiply(x, y), z).coords == \
            b_multiply(x, b_multiply(y, z)).coords


def test_socle_annihilation():
    spec = preset("elliptic-line").to_ringspec()
    socle = quotient_piece(spec, 1, 1)
    assert socle.dim == 1
    sigma = BElement(socle, {0: QQ.one})
    b10 = quotient_piece(spec, 1, 0)
    for i in range(b10.dim):
        prod = b_multiply(BElement(b10, {i: QQ.one}), sigma)
        assert prod.is_zero and prod.piece.dim == 0


def test_trace_functional_presets():
    elliptic = preset("elliptic-line").to_ringspec()
    tau = trace_functional(elliptic)
    assert tau.piece.q == 1 and tau.piece.l == 1
    quartic = preset("fermat-quartic").to_ringspec()
    tau2 = trace_functional(quartic)
    assert (tau2.piece.q, tau2.piece.l) == (2, 0)
    singular = RingSpec(2, [parse_poly("x0*x1*x2", 2)], [])
    with pytest.raises(SocleError):
        trace_functional(singular)


def test_heuristic_fails_on_singular_presets():
    assert not smoothness_heuristic(preset("singular-cubic").to_ringspec())["pass"]
    assert not smoothness_heuristic(
        RingSpec(2, [parse_poly("x0*x1*x2", 2)], []))["pass"]


def test_euler_relation_all_presets():
    for name in ["fermat-quartic", "elliptic-line", "conic-two-lines",
                 "cubic-three-lines"]:
        assert euler_relation_holds(preset(name).to_ringspec())


def test_ideal_rows_in_span_matrix():
    spec = conic_spec()
    ip = ideal_piece(spec, 1, 0)
    for row in ip.span_matrix.data:
        assert in_span(ip.span_matrix, dict(row))


def test_dims_cross_characteristic():
    rng = random.Random(21)
    spec = preset("elliptic-line").to_ringspec()
    for _ in range(2):
        p = random_prime(rng)
        mod = RingSpec(spec.n, spec.F, spec.G, Field(p))
        for (q, l) in [(0, 1), (1, 0), (1, 1), (2, 1)]:
            assert dim_b(spec, q, l) == dim_b(mod, q, l)


def test_hilbert_oracle_hypersurfaces():
    for name in ["quartic-curve", "fermat-quartic"]:
        spec = preset(name).to_ringspec()
        for q in range(0, spec.n + 1):
            for l in range(0, 3):
                assert dim_b(spec, q, l) == \
                    hypersurface_dim_b(spec.n, spec.d[0], q, l)


def test_ladder_spec_shapes():
    spec = conic_spec()
    bb = bbar_spec(spec)
    assert (bb.r, bb.s, bb.bold_d, bb.bold_e) == (1, 1, 2, 1)
    bp = bprime_spec(spec)
    assert (bp.r, bp.s, bp.bold_d, bp.bold_e) == (2, 1, 3, 1)
    with pytest.raises(SpecError):
        bbar_spec(preset("fermat-quartic").to_ringspec())


def test_ladder_exactness_conic():
    spec = conic_spec()
    for q in range(0, spec.n - spec.r + 1):
        for l in (0, 1):
            rep = ladder_report(spec, q, l)
            s1 = rep["lambda1_sequence"]
            assert s1["target_dim"] == s1["rank"] + s1["bbar_dim"]
            s2 = rep["g1_sequence"]
            assert s2["target_dim"] == s2["rank"] + s2["bprime_dim"]


def test_complete_intersection_curve_with_plane_section():
    # r = 2: quadric cap cubic in P^3, cut by a transversal plane
    spec = RingSpec(3, [parse_poly("x0^2 + x1^2 + x2^2 + x3^2", 3),
                        parse_poly("x0^3 + x1^3 + x2^3 + x3^3", 3)],
                    [parse_poly("x0 + 2*x1 + 3*x2 + 5*x3", 3)])
    heur = smoothness_heuristic(spec)
    assert heur["pass"] and heur["socle_dim"] == 1
    assert euler_relation_holds(spec)
    # genus of the (2,3) curve in P^3 is 4: dim B_0(d+e-n-1) = g + deg(Z) - 1
    # with deg(Z) = 6, and dim B_1(d+e-n-1) = g
    assert dim_b(spec, 0, spec.bold_d + spec.bold_e - 4) == 4 + 6 - 1
    assert dim_b(spec, 1, spec.bold_d + spec.bold_e - 4) == 4


def test_ambient_pair_with_degenerate_socle_is_distinguished():
    # r = 0 and small divisor degrees: the socle piece is empty for degree
    # reasons, which is not evidence of a transversality failure
    spec = RingSpec(2, [], [parse_poly("x0", 2), parse_poly("x1", 2),
                            parse_poly("x2", 2)])
    heur = smoothness_heuristic(spec)
    assert not heur["pass"] and "empty" in heur["reason"]
    with pytest.raises(SocleError) as err:
        trace_functional(spec)
    assert "degenerate" in str(err.value)


def test_quotient_piece_memoized_and_deterministic():
    spec = conic_spec()
    p1 = quotient_piece(spec, 1, 0)
    p2 = quotient_piece(spec, 1, 0)
    assert p1 is p2
    spec2 = conic_spec()
    p3 = quotient_piece(spec2, 1, 0)
    assert p1.standard == p3.standard and p1.pivots == p3.pivots
    assert [mono_to_str(p1.ambient.monomials[i]) for i in p1.standard] == \
        [mono_to_str(p3.ambient.monomials[i]) for i in p3.standard]
