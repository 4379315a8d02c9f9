import pytest
from hypothesis import given, settings, strategies as st

from surf10.groebner import Ideal
from surf10.modres import (
    FreeModule, FreeResolution, ModuleError, ModuleMap, betti, betti_numerator, check_complex,
    ext_dims, ext_module, format_betti, free_resolution, hilbert, is_minimal, minimalize,
    parse_betti, syzygy_map,
)
from surf10.numerology import BETTI
from surf10.ring import Polynomial, dim_R, make_rng, random_form

import _oracles
from _fixtures import P, I, fixture_ideals, x0, x1, x2, x3, x4

FIX = fixture_ideals()
ZERO = Polynomial({}, P)


def kernel_dim_oracle(phi, n):
    A = phi.matrix(n)
    return phi.source.dim(n) - (_oracles.rank_mod_p(A, P) if A.size else 0)


def image_dim_oracle(phi, n):
    A = phi.matrix(n)
    return _oracles.rank_mod_p(A, P) if A.size else 0


def test_koszul_syzygies():
    s = syzygy_map(ModuleMap.row([x0, x1]))
    assert list(s.source.twists) == [2]
    col = s.column(0)
    assert x0 * col[0] + x1 * col[1] == 0
    s3 = syzygy_map(ModuleMap.row([x0, x1, x2]))
    assert list(s3.source.twists) == [2, 2, 2]


def generic_2x3(seed):
    rng = make_rng(seed)
    return [[random_form(1, rng) for _ in range(3)] for _ in range(2)]


def minors(M):
    (a, b, c), (d, e, f) = M
    return [b * f - c * e, -(a * f - c * d), a * e - b * d]


def test_hilbert_burch_syzygies():
    M = generic_2x3(4)
    phi = ModuleMap.row(minors(M))
    s = syzygy_map(phi)
    assert list(s.source.twists) == [3, 3]
    for row in M:
        assert sum((a * b for a, b in zip(row, minors(M))), ZERO).is_zero()
    for n in range(0, 6):
        assert image_dim_oracle(s, n) == kernel_dim_oracle(phi, n)


def test_resolution_examples():
    res = free_resolution(I(x0, x1))
    assert betti(res) == {(0, 1): 2, (1, 2): 1}
    res = free_resolution(Ideal(minors(generic_2x3(4)), P))
    assert betti(res) == {(0, 2): 3, (1, 3): 2}
    for n in range(0, 7):
        assert not check_complex(res, [n])


def test_koszul_complex_of_the_maximal_ideal():
    res = free_resolution(I(x0, x1, x2, x3, x4))
    tab = betti(res)
    assert tab == {(0, 1): 5, (1, 2): 10, (2, 3): 10, (3, 4): 5, (4, 5): 1}
    assert ext_dims(res, 5, [-5, -4, -6]) == {-5: 1, -4: 0, -6: 0}


def test_ext_of_a_plane():
    res = free_resolution(I(x0, x1))
    e = ext_dims(res, 2, [-3, -2, -1, 0])
    assert e == {-3: 0, -2: 1, -1: 3, 0: 6}
    assert ext_dims(res, 7, [0]) == {0: 0}
    assert ext_module(res, 9).dims == {}


@pytest.mark.parametrize("name", sorted(FIX))
def test_resolutions_are_exact_and_minimal(name):
    J = FIX[name]
    res = free_resolution(J)
    assert is_minimal(res)
    top = max(t for m in res.modules for t in m.twists)
    assert not check_complex(res, range(0, top + 3))
    for m in res.maps[1:]:
        for r in m.entries:
            assert all(f.is_zero() or f.degree() > 0 for f in r)


@pytest.mark.parametrize("name", sorted(FIX))
def test_hilbert_series_two_routes(name):
    J = FIX[name]
    res = free_resolution(J)
    assert betti_numerator(betti(res)) == hilbert(J).numerator
    h = hilbert(J)
    for n in range(0, 9):
        assert h.hilbert_function(n) == dim_R(n) - _oracles.piece_dim(J.gens, n, P)


def padded(res, k, twist):
    """Add a trivially cancelling pair R(-twist) -> R(-twist) at steps k, k+1.
    The new generator of F_k maps like an existing one of the same twist, and
    their difference is hit by the new generator of F_{k+1}."""
    maps = [ModuleMap(m.source, m.target, [list(r) for r in m.entries], P) for m in res.maps]
    d = maps[k]
    j = d.source.twists.index(twist)
    src = FreeModule(list(d.source.twists) + [twist])
    maps[k] = ModuleMap(src, d.target, [r + [r[j]] for r in d.entries], P)
    one = Polynomial.constant(1, P)
    nrows = src.rank
    col = [ZERO] * nrows
    col[j], col[-1] = one, -one
    if k + 1 < len(maps):
        nxt = maps[k + 1]
        ent = [r + [ZERO] for r in nxt.entries] + [[ZERO] * nxt.source.rank + [col[-1]]]
        ent[j][-1] = col[j]
        maps[k + 1] = ModuleMap(list(nxt.source.twists) + [twist], src, ent, P)
        if k + 2 < len(maps):
            nn = maps[k + 2]
            maps[k + 2] = ModuleMap(nn.source, maps[k + 1].source, nn.entries + [[ZERO] * nn.source.rank], P)
    else:
        maps.append(ModuleMap([twist], src, [[c] for c in col], P))
    return FreeResolution(maps, P)


def test_minimalize_keeps_minimal_resolution():
    res = free_resolution(I(x0, x1))
    assert betti(minimalize(res)) == betti(res)


def test_minimalize_cancels_identity_block():
    res = free_resolution(I(x0, x1))
    pad = padded(res, 0, 1)
    assert not check_complex(pad, range(0, 5))
    assert betti(pad) == {(0, 1): 3, (1, 1): 1, (1, 2): 1}
    assert not is_minimal(pad)
    m = minimalize(pad)
    assert betti(m) == betti(res)
    assert is_minimal(m)
    assert not check_complex(m, range(0, 5))


def test_minimalize_redundant_generator():
    # (x0, x1, x0 x1) with its syzygies (x1, -x0, 0), (x1, 0, -1)
    d0 = ModuleMap.row([x0, x1, x0 * x1])
    d1 = ModuleMap([2, 2], [1, 1, 2], [[x1, x1], [-x0, ZERO], [ZERO, Polynomial.constant(-1, P)]], P)
    res = FreeResolution([d0, d1], P)
    assert not check_complex(res, range(0, 5))
    m = minimalize(res)
    assert betti(m) == {(0, 1): 2, (1, 2): 1}


def test_non_minimal_family_A_resolution(families):
    res = free_resolution(families.ideal("A"))
    pad = padded(padded(res, 1, 6), 2, 8)
    assert betti(pad) != BETTI["A"]
    assert not check_complex(pad, range(4, 10))
    assert betti(minimalize(pad)) == BETTI["A"]


def test_degree_compatibility_is_checked():
    with pytest.raises(ModuleError):
        ModuleMap([2], [0], [[x0]], P)


@pytest.mark.parametrize("f", sorted(BETTI))
def test_target_tables_alternating_sum(f):
    tab = BETTI[f]
    assert sum((-1) ** i * r for (i, _), r in tab.items()) == 1
    assert parse_betti(format_betti(tab)) == tab


def test_alternating_sum_family_A_columns():
    tab = BETTI["A"]
    cols = [sum(r for (i, _), r in tab.items() if i == k) for k in range(4)]
    assert cols == [8, 12, 6, 1]


def test_hilbert_examples():
    h = hilbert(Ideal([], P))
    assert h.dimension == 4 and h.degree == 1
    assert all(h.value(t) == dim_R(t) for t in range(6))
    assert hilbert(I(x0, x1)).surface_invariants() == (1, 0, 1)
    assert hilbert(FIX["scroll"]).surface_invariants() == (3, 0, 1)
    with pytest.raises(ModuleError):
        hilbert(I(x0, x1, x2)).surface_invariants()


def expected_poly(d, pi, chi):
    from fractions import Fraction
    return [Fraction(chi), Fraction(d + 2 - 2 * pi, 2), Fraction(d, 2)]


@pytest.mark.parametrize("f,inv", [("A", (10, 9, 1)), ("H", (10, 10, 4))])
def test_family_hilbert_polynomials(families, f, inv):
    h = hilbert(families.ideal(f))
    assert h.poly == expected_poly(*inv)
    assert h.surface_invariants() == inv


@pytest.mark.parametrize("f", ["B", "G", "H"])
def test_family_betti_tables(families, f):
    res = free_resolution(families.ideal(f))
    assert betti(res) == BETTI[f]


def test_ext4_of_family_D(families):
    res = free_resolution(families.ideal("D"))
    e = ext_dims(res, 4, range(-14, 0))
    vals = [v for _, v in sorted(e.items())]
    while vals and vals[0] == 0:
        vals.pop(0)
    while vals and vals[-1] == 0:
        vals.pop()
    assert vals == [1, 3, 1]


@given(st.integers(0, 2 ** 31))
@settings(max_examples=8, deadline=None)
def test_random_complete_intersections_resolve_by_koszul(seed):
    rng = make_rng(seed)
    a, b = 1 + int(rng.integers(0, 3)), 1 + int(rng.integers(0, 3))
    J = Ideal([random_form(a, rng), random_form(b, rng)], P)
    res = free_resolution(J)
    assert betti(res) == {**{(0, k): v for k, v in _count([a, b]).items()}, (1, a + b): 1}
    assert betti_numerator(betti(res)) == hilbert(J).numerator


def _count(ds):
    out = {}
    for d in ds:
        out[d] = out.get(d, 0) + 1
    return out
