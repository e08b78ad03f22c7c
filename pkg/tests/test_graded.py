import random
from types import SimpleNamespace

from jacring.field import QQ
from jacring.graded import (
    AElement,
    a_multiply,
    bidegree,
    dimension_formula,
    enumerate_basis,
    mono_mul,
    mono_to_str,
)


def data(n=2, d=(3,), e=(1,)):
    return SimpleNamespace(n=n, r=len(d), s=len(e), d=tuple(d), e=tuple(e),
                           field=QQ)


def test_dim_plain_polynomials():
    spec = data(n=2, d=(3,), e=())
    assert enumerate_basis(spec, 0, 2).dim == 6  # C(4,2)


def test_dim_mixed_piece_by_hand():
    # q=1, l=1 with d=3, e=1: P^4 mu (15) plus P^2 lambda (6)
    spec = data()
    basis = enumerate_basis(spec, 1, 1)
    assert basis.dim == 21
    assert dimension_formula(spec, 1, 1) == 21


def test_negative_q_is_zero():
    spec = data()
    assert enumerate_basis(spec, -1, 5).dim == 0
    assert dimension_formula(spec, -1, 5) == 0


def test_negative_component_degrees_skipped():
    # q=1, l=-1: mu part has degree 2, lambda part degree 0
    spec = data()
    basis = enumerate_basis(spec, 1, -1)
    assert basis.dim == 6 + 1


def test_formula_matches_enumeration_sweep():
    spec = data(n=2, d=(2, 3), e=(1,))
    for q in range(-1, 4):
        for l in range(-4, 5):
            assert enumerate_basis(spec, q, l).dim == dimension_formula(spec, q, l)


def test_basis_order_is_multiindex_then_term_order():
    spec = data()
    basis = enumerate_basis(spec, 1, -1)  # bare lambda, then P^2 mu
    labels = [mono_to_str(m) for m in basis.monomials]
    assert labels == ["lambda1", "mu1*x0^2", "mu1*x0*x1", "mu1*x1^2",
                      "mu1*x0*x2", "mu1*x1*x2", "mu1*x2^2"]


def test_bidegree_bookkeeping():
    spec = data()
    mono = ((1,), (1,), (0, 0, 0))  # mu1*lambda1
    assert bidegree(spec, mono) == (2, -4)


def test_a_multiply_examples():
    spec = data()
    mu = AElement.from_terms(spec, {((1,), (0,), (0, 0, 0)): 1})
    lam = AElement.from_terms(spec, {((0,), (1,), (0, 0, 0)): 1})
    prod = a_multiply(mu, lam)
    assert (prod.q, prod.l) == (2, -4)
    x0 = AElement.from_terms(spec, {((0,), (0,), (1, 0, 0)): 1})
    x1mu = AElement.from_terms(spec, {((1,), (0,), (0, 1, 0)): 1})
    out = a_multiply(x0, x1mu)
    assert out.terms == {((1,), (0,), (1, 1, 0)): 1}
    # a full-degree form times mu lands in bidegree (1, 0)
    f_mu = AElement.from_terms(spec, {((1,), (0,), (3, 0, 0)): 1})
    assert (f_mu.q, f_mu.l) == (1, 0)


def rand_element(spec, rng, q, l):
    basis = enumerate_basis(spec, q, l)
    terms = {}
    for m in basis.monomials:
        c = rng.randint(-3, 3)
        if c:
            terms[m] = c
    return AElement.from_terms(spec, terms) if terms else AElement.zero(spec, q, l)


def test_multiply_commutative_associative():
    spec = data()
    rng = random.Random(4)
    for _ in range(10):
        x = rand_element(spec, rng, 1, 0)
        y = rand_element(spec, rng, 0, 1)
        z = rand_element(spec, rng, 1, -1)
        assert a_multiply(x, y).terms == a_multiply(y, x).terms
        assert a_multiply(a_multiply(x, y), z).terms == \
            a_multiply(x, a_multiply(y, z)).terms
        prod = a_multiply(x, y)
        assert (prod.q, prod.l) == (1, 1)


def test_products_land_in_matching_basis():
    spec = data()
    for (q1, l1, q2, l2) in [(1, 0, 1, 0), (0, 1, 1, -1), (1, 1, 1, 0)]:
        target = enumerate_basis(spec, q1 + q2, l1 + l2)
        for m1 in enumerate_basis(spec, q1, l1):
            for m2 in enumerate_basis(spec, q2, l2):
                assert mono_mul(m1, m2) in target.index


def test_every_basis_monomial_factors_through_x_part():
    spec = data()
    for (q, l) in [(1, 0), (2, -2), (1, 2)]:
        for mono in enumerate_basis(spec, q, l):
            a, b, x = mono
            pure = (a, b, (0,) * (spec.n + 1))
            xq, xl = bidegree(spec, pure)
            assert xq == q
            assert mono_mul(pure, ((0,) * spec.r, (0,) * spec.s, x)) == mono
            assert xl + sum(x) == l
