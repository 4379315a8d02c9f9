import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from surf10.ring import (
    DEFAULT_PRIME, ParseError, Polynomial, PrimeField, RingError, compare_monomials,
    dim_R, divides, format_polynomial, is_homogeneous, make_rng, monomials_of_degree,
    parse_polynomial, poly_product, random_form, variables,
)

P = DEFAULT_PRIME
x0, x1, x2, x3, x4 = variables()

monos = st.lists(st.integers(0, 3), min_size=5, max_size=5).map(tuple)


@st.composite
def polys(draw, max_deg=3, homogeneous=False):
    d = draw(st.integers(0, max_deg))
    n = draw(st.integers(0, 6))
    terms = {}
    for _ in range(n):
        if homogeneous:
            m = draw(st.sampled_from(monomials_of_degree(d)))
        else:
            m = draw(st.sampled_from(monomials_of_degree(draw(st.integers(0, max_deg)))))
        terms[m] = draw(st.integers(1, P - 1))
    return Polynomial(terms)


def ref_grevlex_less(a, b):
    # reference comparator: degree, then the last differing exponent decides,
    # larger exponent in the last variable means smaller monomial
    if sum(a) != sum(b):
        return sum(a) < sum(b)
    for i in reversed(range(5)):
        if a[i] != b[i]:
            return a[i] > b[i]
    return False


def test_compare_examples():
    assert compare_monomials((2, 0, 0, 0, 0), (1, 1, 0, 0, 0)) == 1
    assert compare_monomials((0, 0, 0, 0, 3), (2, 0, 0, 0, 0)) == 1
    assert compare_monomials((0, 0, 2, 0, 0), (0, 1, 0, 1, 0)) == 1


def test_degree_two_order_matches_reference():
    ms = monomials_of_degree(2)
    import functools
    ref = sorted(ms, key=functools.cmp_to_key(
        lambda a, b: -1 if ref_grevlex_less(a, b) else (1 if ref_grevlex_less(b, a) else 0)))
    ours = sorted(ms, key=functools.cmp_to_key(compare_monomials))
    assert ours == ref
    assert ours.index((0, 0, 2, 0, 0)) > ours.index((0, 1, 0, 1, 0))


@given(monos, monos)
def test_order_is_total_and_antisymmetric(a, b):
    assert compare_monomials(a, b) == -compare_monomials(b, a)
    assert (compare_monomials(a, b) == 0) == (a == b)


@given(monos, monos)
def test_order_refines_divisibility(a, b):
    m = a
    n = tuple(u + v for u, v in zip(a, b))
    assert divides(m, n)
    if m != n:
        assert compare_monomials(m, n) < 0


def test_product_examples():
    assert (x0 + x1) * (x0 - x1) == x0 ** 2 - x1 ** 2
    assert (x0 * Polynomial()).is_zero()
    s = x0 + x1 + x2 + x3 + x4
    sq = poly_product(s, s)
    assert len(sq.terms) == 15
    for m, c in sq.terms.items():
        assert c == (1 if max(m) == 2 else 2)


def brute_product(f, g):
    out = {}
    for (m, a), (n, b) in itertools.product(f.terms.items(), g.terms.items()):
        k = tuple(u + v for u, v in zip(m, n))
        out[k] = (out.get(k, 0) + a * b) % P
    return {k: v for k, v in out.items() if v}


@given(polys(), polys())
@settings(max_examples=60)
def test_product_matches_convolution(f, g):
    assert poly_product(f, g).terms == brute_product(f, g)


@given(polys(), polys(), polys())
@settings(max_examples=60)
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f
    assert f * g == g * f
    assert (f - f).is_zero()


@given(polys(homogeneous=True), polys(homogeneous=True))
def test_homogeneous_product_degree(f, g):
    h = f * g
    if not h.is_zero():
        assert is_homogeneous(h) == (True, f.degree() + g.degree())


def test_is_homogeneous_examples():
    assert is_homogeneous(x0 ** 2 + x1 * x2) == (True, 2)
    assert is_homogeneous(x0 + x1 * x2)[0] is False
    ok, d = is_homogeneous(Polynomial())
    assert ok and d is None


def test_field_inverses():
    F = PrimeField()
    rng = random.Random(3)
    for _ in range(1000):
        a = rng.randrange(1, P)
        assert F(a * F.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(RingError):
        PrimeField(31990)


def test_terms_are_reduced():
    f = Polynomial({(1, 0, 0, 0, 0): P + 3, (0, 1, 0, 0, 0): P})
    assert f.terms == {(1, 0, 0, 0, 0): 3}


@given(polys(max_deg=4))
def test_parse_format_roundtrip(f):
    s = format_polynomial(f)
    g = parse_polynomial(s)
    assert g == f
    assert format_polynomial(g) == s


def test_parse_syntax():
    assert parse_polynomial("x0^2 - 3*x1*x2 + x3x4") == x0 ** 2 - x1 * x2 * 3 + x3 * x4
    assert parse_polynomial("-x0") == -x0
    with pytest.raises(ParseError):
        parse_polynomial("x5 + 1")
    with pytest.raises(ParseError):
        parse_polynomial("x0 +")


def test_dim_R():
    assert [dim_R(d) for d in range(5)] == [1, 5, 15, 35, 70]
    assert dim_R(-1) == 0
    for d in range(6):
        assert len(monomials_of_degree(d)) == dim_R(d)


def test_rng_is_deterministic():
    a = random_form(3, make_rng(11))
    b = random_form(3, make_rng(11))
    assert a == b
    assert a != random_form(3, make_rng(12))
