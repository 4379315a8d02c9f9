"""Integer formulas for smooth surfaces in P^4 and the classification of
degree 10 surfaces with sectional genus 9 and 10.

Notation: H hyperplane class, K canonical class, d = H^2, pi the
sectional genus, chi = chi(O_S).
"""

from dataclasses import dataclass, field


class NumerologyError(ValueError):
    pass


def _half(x, what):
    if x % 2:
        raise NumerologyError(f"{what} is not an integer")
    return x // 2


def adjunction_genus(C2, CK):
    """Arithmetic genus p_a of a curve C with C^2 = C2 and C.K = CK."""
    return _half(C2 + CK, "p_a") + 1


def union_genus(pC, pD, CD):
    """p_a(C u D) for curves C, D on a smooth surface meeting in CD points."""
    return pC + pD + CD - 1


def chi_twist(C2, CK, chiS):
    """chi(O_S(C)) by Riemann-Roch."""
    return _half(C2 - CK, "chi(O_S(C))") + chiS


def double_point_K2(d, HK, chi):
    """K^2 of a smooth surface in P^4 from the double point formula
    d^2 - 10 d - 5 HK - 2 K^2 + 12 chi = 0."""
    return _half(d * d - 10 * d - 5 * HK + 12 * chi, "K^2")


def hk_from_genus(d, pi):
    """H.K from the sectional genus: 2 pi - 2 = d + HK."""
    return 2 * pi - 2 - d


def double_point_defect(d, HK, K2, chi):
    return d * d - 10 * d - 5 * HK - 2 * K2 + 12 * chi


# secant counts (#5 meeting a general plane, #6 including (-1)-lines) for
# degree 10, keyed by (pi, chi)
_LEBARZ = {
    (9, 1): (6, 7),
    (9, 2): (12, 3),
    (9, 3): (18, 3),
    (10, 3): (2, 2),
    (10, 4): (6, 1),
}


def lebarz_counts(pi, chi):
    """(#5, #6) for a smooth degree 10 surface with the given pi and chi."""
    try:
        return _LEBARZ[(pi, chi)]
    except KeyError:
        raise NumerologyError(f"no secant counts for (pi, chi) = ({pi}, {chi})") from None


def liaison_transform(d, pi, m, n, d_residual):
    """Sectional genus of the residual of a surface of degree d and genus pi
    in an (m, n) complete intersection:
    pi - pi' = (m + n - 4)(d - d') / 2."""
    return pi - _half((m + n - 4) * (d - d_residual), "genus difference")


def residual_degree(d, m, n):
    return m * n - d


def chi_relation(chi_ci, chi_s_twist):
    """chi(O_S') = chi(O_X) - chi(O_S(m+n-5)) for S u S' = X a complete
    intersection (m, n); arguments chi(O_X) and chi(O_S(m+n-5))."""
    return chi_ci - chi_s_twist


def chi_complete_intersection(m, n):
    """chi(O_X) for a complete intersection surface of type (m, n) in P^4."""
    def c(t):
        return (t + 4) * (t + 3) * (t + 2) * (t + 1) // 24
    return c(0) - c(-m) - c(-n) + c(-m - n)


@dataclass(frozen=True)
class SurfaceNumerics:
    d: int
    HK: int
    K2: int
    pi: int
    chi: int
    N5: int = None
    N6: int = None

    @classmethod
    def from_invariants(cls, d, pi, chi, N5=None, N6=None):
        HK = hk_from_genus(d, pi)
        return cls(d, HK, double_point_K2(d, HK, chi), pi, chi, N5, N6)

    def consistent(self):
        return (adjunction_genus(self.d, self.HK) == self.pi
                and double_point_defect(self.d, self.HK, self.K2, self.chi) == 0)


@dataclass(frozen=True)
class FamilyDescriptor:
    family: str
    pi: int
    chi: int
    N6: int
    N5: int
    birational_type: str
    minus_one_lines: int
    hilbert_scheme_dim: int
    betti: dict = field(default=None, hash=False, compare=False)
    route: str = ""

    @property
    def numerics(self):
        return SurfaceNumerics.from_invariants(10, self.pi, self.chi, self.N5, self.N6)

    @property
    def K2(self):
        return self.numerics.K2


def _b(*cols):
    return {(i, j): r for i, col in enumerate(cols) for j, r in col.items()}


# minimal Betti tables with the generators of I_S in column 0
BETTI = {
    "A": _b({4: 2, 5: 5, 6: 1}, {6: 9, 7: 3}, {7: 3, 8: 3}, {9: 1}),
    "B": _b({4: 1, 5: 10}, {6: 18}, {7: 10}, {8: 2}),
    "C": _b({4: 2, 5: 4, 6: 3}, {6: 7, 7: 8}, {7: 2, 8: 7}, {9: 2}),
    "D": _b({4: 1, 5: 9, 6: 1}, {6: 15, 7: 3}, {7: 7, 8: 3}, {8: 1, 9: 1}),
    "E": _b({4: 1, 5: 9}, {6: 14, 7: 1}, {7: 5, 8: 2}, {9: 1}),
    "F": _b({4: 1, 5: 8, 6: 3}, {6: 13, 7: 8}, {7: 6, 8: 7}, {8: 1, 9: 2}),
    "G": _b({4: 3, 5: 3}, {6: 9}, {7: 5}, {8: 1}),
    "H": _b({4: 3, 5: 3, 6: 1}, {5: 1, 6: 6, 7: 3}, {7: 2, 8: 3}, {9: 1}),
}

FAMILIES = {
    "A": FamilyDescriptor("A", 9, 1, 1, 6, "rational", 6, 42, BETTI["A"],
                          "three planes and a cubic scroll, linked (4,4)"),
    "B": FamilyDescriptor("B", 9, 1, 0, 6, "rational", 7, 42, BETTI["B"],
                          "monad 2 Omega^3(3) -> 2 Omega^1(1) + O"),
    "C": FamilyDescriptor("C", 9, 2, 3, 12, "K3", 0, 45, BETTI["C"],
                          "triple plane and three planes, linked (4,4)"),
    "D": FamilyDescriptor("D", 9, 2, 1, 12, "K3", 2, 44, BETTI["D"],
                          "plane, quadric and cubic scroll, bilinked (4,4), (4,5)"),
    "E": FamilyDescriptor("E", 9, 2, 0, 12, "elliptic", 3, 44, BETTI["E"],
                          "quadruple plane and a quadric, bilinked (4,4), (4,5)"),
    "F": FamilyDescriptor("F", 9, 3, 3, 18, "general type", 0, 47, BETTI["F"],
                          "cubic surface and three planes, bilinked (4,4), (4,5)"),
    "G": FamilyDescriptor("G", 10, 3, 0, 2, "elliptic", 2, 51, BETTI["G"],
                          "quartic Del Pezzo and a quadric surface, linked (4,4)"),
    "H": FamilyDescriptor("H", 10, 4, 1, 6, "general type", 0, 53, BETTI["H"],
                          "cubic Del Pezzo and three planes, linked (4,4)"),
}


_OTHER_GENERA = {
    6: "abelian or bielliptic surface",
    8: "Enriques surface with four (-1)-lines, or rational surface",
    11: "linked to an elliptic quintic scroll or to a Bordiga surface",
    12: "linked to a degenerate quadric surface",
    16: "complete intersection (2,5)",
}


def classify_d10(pi):
    """Family descriptors of smooth degree 10 surfaces in P^4 with the given
    sectional genus.  For pi outside {9, 10} only a text summary is given."""
    if pi in (9, 10):
        return [f for f in FAMILIES.values() if f.pi == pi]
    if pi in _OTHER_GENERA:
        return [_OTHER_GENERA[pi]]
    raise NumerologyError(f"no classification entry for pi = {pi}")


def family_for(pi, chi, N6):
    """The family letter with the given (pi, chi, N6), or None."""
    for f in FAMILIES.values():
        if (f.pi, f.chi, f.N6) == (pi, chi, N6):
            return f.family
    return None


def expected_residual(pi):
    """(degree, sectional genus) of a (4,4) residual of a degree 10 surface."""
    return residual_degree(10, 4, 4), liaison_transform(10, pi, 4, 4, 6)
