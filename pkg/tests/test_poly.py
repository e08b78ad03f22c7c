import random
from fractions import Fraction

import pytest

from jacring.field import Field, QQ
from jacring.parser import parse_poly
from jacring.poly import (
    DegreeError,
    HomogPoly,
    _det_bareiss,
    _det_cofactor,
    derivative_determinant,
    euler_combination,
    monomials_of_degree,
    partial,
    poly_exact_div,
    verify_identity_star,
)


def P(text, n=2):
    return parse_poly(text, n)


def test_monomial_product():
    assert P("x0") * P("x1") == P("x0*x1")


def test_difference_of_squares():
    assert P("x0 + x1") * P("x0 - x1") == P("x0^2 - x1^2")


def test_zero_annihilates():
    z = HomogPoly.zero(3, 5)
    p = P("x0^2 + x1*x2")
    assert (z * p).is_zero and (p * z).is_zero
    assert p.scale(0).is_zero


def test_partial_basics():
    assert partial(P("x0^3"), 0) == P("3*x0^2")
    assert partial(P("x0^3"), 1).is_zero
    with pytest.raises(ValueError):
        partial(P("x0^2"), 7)


def test_euler_identity_fermat_cubic():
    f = P("x0^3 + x1^3 + x2^3")
    assert euler_combination(f) == f.scale(3)


def test_euler_identity_random():
    rng = random.Random(0)
    for _ in range(20):
        terms = {}
        for e in monomials_of_degree(3, 4):
            c = rng.randint(-5, 5)
            if c:
                terms[e] = c
        f = HomogPoly.from_terms(3, terms)
        if f.is_zero:
            continue
        assert euler_combination(f) == f.scale(f.degree)


def test_partial_linear_and_leibniz():
    rng = random.Random(1)
    for _ in range(15):
        def rand_poly(deg):
            terms = {e: rng.randint(-3, 3) for e in monomials_of_degree(3, deg)}
            return HomogPoly.from_terms(3, terms)
        f, g = rand_poly(2), rand_poly(3)
        k = rng.randrange(3)
        lhs = partial(f * g, k)
        rhs = partial(f, k) * g + f * partial(g, k)
        assert lhs == rhs
        a, b = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
        h = rand_poly(2)
        if f.degree == h.degree:
            assert partial(f.scale(a) + h.scale(b), k) == \
                partial(f, k).scale(a) + partial(h, k).scale(b)


def test_add_degree_mismatch():
    with pytest.raises(DegreeError):
        P("x0^2") + P("x1")


def test_derivative_determinant_two_vars():
    f = derivative_determinant([parse_poly("x0^2", 1), parse_poly("x1^2", 1)])
    assert f == parse_poly("4*x0*x1", 1)


def test_derivative_determinant_three_vars():
    f = derivative_determinant([P("x0^2 + x1^2 + x2^2"), P("x0"), P("x1")])
    assert f == P("2*x2")


def test_derivative_determinant_repeated_row_vanishes():
    f = P("x0^2 + x1*x2")
    assert derivative_determinant([f, f, P("x1")]).is_zero


def test_derivative_determinant_alternating():
    f, g, h = P("x0^3 + x1^3 + x2^3"), P("x0^2*x1"), P("x2^2 + x0*x1")
    d1 = derivative_determinant([f, g, h])
    d2 = derivative_determinant([g, f, h])
    assert d1 == d2.scale(-1)


def test_determinant_form_count_checked():
    with pytest.raises(ValueError):
        derivative_determinant([P("x0"), P("x1")])


def test_identity_star_quadric_pair():
    assert verify_identity_star([parse_poly("x0^2", 1), parse_poly("x1^2", 1)])


def test_identity_star_cubic_and_lines():
    assert verify_identity_star([P("x0^3 + x1^3 + x2^3"), P("x0"), P("x1")])


def test_identity_star_random_tuples():
    rng = random.Random(2)
    for _ in range(6):
        def rand_form(deg):
            terms = {e: rng.randint(-4, 4) for e in monomials_of_degree(3, deg)}
            f = HomogPoly.from_terms(3, terms)
            return f if not f.is_zero else P("x0" + ("^%d" % deg if deg > 1 else ""))
        assert verify_identity_star([rand_form(2), rand_form(1), rand_form(2)])


def test_identity_star_inhomogeneous_is_contract_error():
    # tampering with a summand of mixed degree fails before any evaluation
    with pytest.raises(DegreeError):
        P("x0^2 + x1^2 + x2^2") + P("x0")


def test_bareiss_matches_cofactor():
    rng = random.Random(3)
    for _ in range(5):
        forms = []
        for deg in (2, 2, 3):
            terms = {e: rng.randint(-3, 3) for e in monomials_of_degree(3, deg)}
            f = HomogPoly.from_terms(3, terms)
            forms.append(f if not f.is_zero else P("x2^%d" % deg))
        mat = [[partial(f, k) for k in range(3)] for f in forms]
        assert _det_bareiss(mat, 3, QQ) == _det_cofactor(mat, 3, QQ)


def test_poly_exact_div_roundtrip():
    f = P("x0^2 + 3*x1*x2")
    g = P("x0 - 2*x2")
    assert poly_exact_div(f * g, g) == f
    with pytest.raises(ArithmeticError):
        poly_exact_div(P("x0^2"), P("x1"))


def test_prime_field_polynomials():
    fp = Field(97)
    f = parse_poly("x0^2 + 96*x1^2", 1, fp)
    g = parse_poly("x0^2 + x1^2", 1, fp).scale(-1)
    assert (f + g) == parse_poly("95*x1^2", 1, fp)
