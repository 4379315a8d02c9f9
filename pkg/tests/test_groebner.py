import pytest
from hypothesis import given, settings, strategies as st

from surf10.groebner import (
    Ideal, IdealError, buchberger, buchberger_up_to, format_ideal, graded_piece_dim,
    ideal_contains, is_groebner_basis, leading_monomials, macaulay_dim, normal_form,
    parse_ideal, read_ideal, write_ideal,
)
from surf10.ring import ParseError, Polynomial, divides, dim_R, make_rng, random_form

import _oracles
from _fixtures import P, I, fixture_ideals, x0, x1, x2, x3, x4

FIX = fixture_ideals()


def monic_set(G):
    return sorted((tuple(sorted(g.monic().terms.items())) for g in G))


def test_linear_ideal_is_its_own_basis():
    assert monic_set(buchberger([x0, x1])) == monic_set([x0, x1])


def test_principal_ideal():
    f = x0 * x3 - x1 * x2
    assert monic_set(buchberger([f])) == monic_set([f])


def test_small_basis_matches_naive_oracle():
    f1, f2 = x0 * x0 - x1 * x2, x0 * x1
    G = buchberger([f1, f2])
    expected = [f1, f2, x1 * x1 * x2]
    assert monic_set(G) == monic_set(expected)
    ref = _oracles.naive_groebner([f1, f2], P)
    assert monic_set(G) == sorted(tuple(sorted(g.items())) for g in ref)


@pytest.mark.parametrize("name", ["scroll", "cone", "triple_plane", "ci22", "two_planes", "unsaturated"])
def test_bases_match_naive_oracle(name):
    J = FIX[name]
    ref = _oracles.naive_groebner(J.gens, P)
    assert monic_set(J.gb()) == sorted(tuple(sorted(g.items())) for g in ref)


@pytest.mark.parametrize("name", sorted(FIX))
def test_sequential_and_matrix_routes_agree(name):
    J = FIX[name]
    a = buchberger(J.gens, method="sequential")
    b = buchberger(J.gens, method="matrix")
    assert monic_set(a) == monic_set(b)
    assert is_groebner_basis(a)


@pytest.mark.parametrize("name", sorted(FIX))
def test_basis_is_reduced_and_idempotent(name):
    G = FIX[name].gb()
    leads = [g.lm() for g in G]
    for i, g in enumerate(G):
        assert g.lc() == 1
        for m in g.terms:
            for j, l in enumerate(leads):
                if j != i:
                    assert not divides(l, m)
    assert monic_set(buchberger(G)) == monic_set(G)
    # same ideal: generators reduce to zero and vice versa
    J = FIX[name]
    assert all(normal_form(f, G).is_zero() for f in J.gens)
    assert all(ideal_contains(J, g) for g in G)


def test_normal_form_examples():
    assert normal_form(x0 * x0, [x0]).is_zero()
    assert normal_form(x2 ** 3, [x0, x1]) == x2 ** 3
    G = buchberger([x0 * x0 - x1 * x2, x0 * x1])
    assert normal_form(x0 * x0 * x2, G) == x1 * x2 * x2


def test_membership_examples():
    assert ideal_contains(I(x0, x1), x0 * x4)
    assert not ideal_contains(I(x0 * x0), x0)
    # the triple plane structure contains x1^3
    assert ideal_contains(FIX["triple_plane"], x1 ** 3)


@pytest.mark.parametrize("name", ["scroll", "triple_plane", "ci23", "cone"])
def test_membership_soundness(name):
    J = FIX[name]
    rng = make_rng(99)
    for _ in range(100):
        d = int(rng.integers(0, 3))
        f = Polynomial({}, P)
        for g in J.gens:
            f = f + random_form(d, rng) * g if d > 0 else f + g.scale(int(rng.integers(0, P)))
        assert ideal_contains(J, f)
    assert not ideal_contains(J, x4 ** 5)


@given(st.integers(0, 2 ** 32))
@settings(max_examples=25, deadline=None)
def test_normal_form_remainder_lies_in_ideal(seed):
    rng = make_rng(seed)
    J = FIX["scroll"]
    f = random_form(3, rng)
    r = normal_form(f, J.gb())
    assert ideal_contains(J, f - r)
    leads = leading_monomials(J)
    assert not any(divides(l, m) for l in leads for m in r.terms)


def test_graded_piece_examples():
    assert graded_piece_dim(I(x0), 1) == 1
    assert graded_piece_dim(Ideal([], P), 2, "quotient") == 15
    with pytest.raises(ValueError):
        graded_piece_dim(I(x0), 1, "both")


@pytest.mark.parametrize("name", sorted(FIX))
def test_graded_dimension_oracle(name):
    J = FIX[name]
    for n in range(0, 9):
        ours = graded_piece_dim(J, n)
        assert ours == _oracles.piece_dim(J.gens, n, P)
        assert ours == macaulay_dim(J.gens, n)
        assert ours + graded_piece_dim(J, n, "quotient") == dim_R(n)


def test_truncated_basis():
    J = FIX["small_gb"]
    G2 = buchberger_up_to(J.gens, 2)
    assert monic_set(G2) == monic_set(J.gens)
    assert len(buchberger_up_to(J.gens, 3)) == 3


def test_non_homogeneous_rejected():
    with pytest.raises(IdealError):
        Ideal([x0 + x1 * x1], P)


def test_ideal_file_roundtrip(tmp_path):
    J = FIX["triple_plane"]
    J.comments = ["triple plane"]
    path = tmp_path / "t.ideal"
    write_ideal(J, path)
    text = path.read_text()
    assert text.splitlines()[0] == f"ring p={P} vars=x0..x4 order=grevlex"
    K = read_ideal(path)
    assert K.gens == J.gens
    assert format_ideal(K) == text


@pytest.mark.parametrize("text", [
    "",
    "x0 + x1\n",
    "ring p=31990 vars=x0..x4 order=grevlex\nx0\n",
    "ring p=31991 vars=x0..x4 order=lex\nx0\n",
    "ring p=31991 vars=x0..x4 order=grevlex\nx0 + x1^2\n",
    "ring p=31991 vars=x0..x4 order=grevlex\nx7\n",
])
def test_ideal_file_errors(text):
    with pytest.raises(ParseError):
        parse_ideal(text)
