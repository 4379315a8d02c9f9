"""Cohomology of ideal sheaves of surfaces in P^4 via graded local duality.

For a saturated ideal I of a surface, with E^i = Ext^i(R/I, R):

    h^0(I(n)) = dim I_n
    h^1(I(n)) = dim E^4_{-5-n}
    h^2(I(n)) = dim E^3_{-5-n}
    h^3(I(n)) = dim E^2_{-5-n}

All Ext modules come from one minimal free resolution (cached on the
ideal).  The Hartshorne-Rao module H^1_*(I) is the graded dual of E^4
shifted by -5: its degree n piece is dual to E^4_{-5-n}.
"""

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import _linalg as la
from ._graded import module_mult_matrix, module_vec, subspace_projection, vec_to_module
from .groebner import Ideal
from .idealops import ideal_sum, piece_dim, regularity, saturate, zero_scheme_length
from .modres import FreeModule, ModuleMap, ext_dims, free_resolution, hilbert, prune_map
from .ring import NVARS, Polynomial, dim_R


class CohomologyError(ValueError):
    pass


def _surface_resolution(I):
    h = hilbert(I)
    if h.dimension != 2:
        raise CohomologyError(f"expected a surface, got projective dimension {h.dimension}")
    res = getattr(I, "_res", None)
    if res is None:
        res = free_resolution(I)
        I._res = res
    return res, h


def _steps(res):
    return [FreeModule([0])] + [m.source for m in res.maps]


@dataclass
class CohomologyTable:
    """h^i(I(n)) for i = 0..3 and lo <= n <= hi."""
    entries: dict
    lo: int
    hi: int
    hilbert_poly: object = None

    def h(self, i, n):
        return self.entries[(i, n)]

    def column(self, n):
        return tuple(self.entries[(i, n)] for i in range(4))

    def euler_defects(self):
        """n -> sum (-1)^i h^i(I(n)) - (C(n+4,4) - P_S(n)); all zero when
        the table is consistent with the Hilbert polynomial."""
        out = {}
        for n in range(self.lo, self.hi + 1):
            alt = sum((-1) ** i * self.entries[(i, n)] for i in range(4))
            chi_I = _chi_O(n) - self.hilbert_poly.value(n)
            out[n] = alt - int(chi_I)
        return out

    def is_consistent(self):
        return all(v == 0 for v in self.euler_defects().values())

    def render(self):
        ns = list(range(self.lo, self.hi + 1))
        w = max(4, max(len(str(v)) for v in self.entries.values()) + 1)
        lines = ["      n " + "".join(f"{n:>{w}}" for n in ns)]
        for i in range(4):
            lines.append(f"h^{i}(I(n))" + "".join(f"{self.entries[(i, n)]:>{w}}" for n in ns))
        return "\n".join(lines)

    def to_dict(self):
        return {f"h{i}": {str(n): self.entries[(i, n)] for n in range(self.lo, self.hi + 1)}
                for i in range(4)}


def _chi_O(n):
    # C(n+4, 4) as a polynomial in n
    return (n + 4) * (n + 3) * (n + 2) * (n + 1) // 24


def cohomology_table(I, lo=0, hi=6):
    res, h = _surface_resolution(I)
    degs = [-5 - n for n in range(lo, hi + 1)]
    e4 = ext_dims(res, 4, degs)
    e3 = ext_dims(res, 3, degs)
    e2 = ext_dims(res, 2, degs)
    ent = {}
    for n in range(lo, hi + 1):
        d = -5 - n
        ent[(0, n)] = piece_dim(I, n) if n >= 0 else 0
        ent[(1, n)] = e4[d]
        ent[(2, n)] = e3[d]
        ent[(3, n)] = e2[d]
    return CohomologyTable(ent, lo, hi, h)


def ideal_sheaf_cohomology(I, n):
    """(h0, h1, h2, h3) of I(n)."""
    return cohomology_table(I, n, n).column(n)


# --- the Rao module -----------------------------------------------------------------


class _Cokernel:
    """A finitely generated graded module coker(T : G -> F), known piece by
    piece through projections onto quotient coordinates."""

    def __init__(self, T):
        self.T = T
        self.p = T.p
        self._proj = {}

    def _piece(self, d):
        r = self._proj.get(d)
        if r is None:
            n = self.T.target.dim(d)
            if n == 0:
                r = (np.zeros((0, 0), np.int64), np.zeros(0, np.int64))
            else:
                A = self.T.matrix(d) if self.T.source.rank else np.zeros((n, 0), np.int64)
                r = subspace_projection(A, self.p, with_free=True)
            self._proj[d] = r
        return r

    def projection(self, d):
        return self._piece(d)[0]

    def dim(self, d):
        return self.projection(d).shape[0]

    def lift(self, d):
        """Representatives in F_d of the quotient basis (unit vectors on the
        free coordinates)."""
        P, free = self._piece(d)
        L = np.zeros((P.shape[1], len(free)), np.int64)
        L[free, np.arange(len(free))] = 1
        return L

    def mult(self, r, d):
        """Matrix of multiplication by the form r from degree d to d+deg r in
        quotient coordinates."""
        e = d + r.degree()
        M = module_mult_matrix(r, self.T.target.twists, d, self.p)
        return la.matmul(self.projection(e), la.matmul(M, self.lift(d), self.p), self.p)


@dataclass
class RaoModule:
    """H^1_*(I_S): Hilbert function n -> h^1(I(n)), the Ext^4 cokernel it is
    dual to, its number of minimal generators and its annihilator."""
    hilbert_function: dict
    ext4: object = field(repr=False, default=None)
    generators: int = 0
    annihilator: Ideal = None

    @property
    def is_zero(self):
        return not any(self.hilbert_function.values())

    @property
    def length(self):
        return sum(self.hilbert_function.values())

    def values(self):
        """The nonzero part of the Hilbert function, in increasing degree."""
        ks = [n for n, v in sorted(self.hilbert_function.items()) if v]
        if not ks:
            return ()
        return tuple(self.hilbert_function[n] for n in range(ks[0], ks[-1] + 1))

    def degrees(self):
        return [n for n, v in sorted(self.hilbert_function.items()) if v]


def _ext4_cokernel(res):
    mods = _steps(res)
    if len(mods) < 5:
        return None
    if len(mods) > 5:
        raise CohomologyError("resolution longer than expected for a surface")
    return _Cokernel(res.maps[3].transpose())


def rao_module(I, with_annihilator=True):
    res, _ = _surface_resolution(I)
    reg = regularity(I)
    ns = range(-1, reg + 2)
    e4 = ext_dims(res, 4, [-5 - n for n in ns])
    hf = {n: e4[-5 - n] for n in ns}
    C = _ext4_cokernel(res)
    if C is None or not any(hf.values()):
        return RaoModule(hf, None, 0, Ideal([Polynomial.constant(1, I.p)], I.p))
    degs = [-5 - n for n, v in hf.items() if v]
    lo, hi = min(degs), max(degs)
    # minimal generators of H^1_* <-> socle of Ext^4
    soc = 0
    for d in range(lo, hi + 1):
        if C.dim(d) == 0:
            continue
        if d == hi:
            soc += C.dim(d)
            continue
        M = np.vstack([C.mult(Polynomial.var(j, I.p), d) for j in range(NVARS)])
        soc += C.dim(d) - la.rank(M, I.p)
    ann = _annihilator(C, lo, hi, I.p) if with_annihilator else None
    return RaoModule(hf, C, soc, ann)


def _annihilator(C, lo, hi, p):
    """Ann of the finite length module with nonzero pieces in [lo, hi]."""
    from ._graded import poly_to_vec, vec_to_poly
    from .ring import monomials_of_degree
    gens = []
    span = hi - lo + 1
    for t in range(1, span + 1):
        monos = monomials_of_degree(t)
        rows = []
        for d in range(lo, hi - t + 1):
            if C.dim(d) == 0 or C.dim(d + t) == 0:
                continue
            cols = [C.mult(Polynomial.monomial(m, 1, p), d).reshape(-1) for m in monos]
            rows.append(np.array(cols, dtype=np.int64).T)
        if rows:
            K = la.kernel(np.vstack(rows) % p, p)
        else:
            K = np.eye(len(monos), dtype=np.int64)
        gens += [vec_to_poly(K[:, c], t, p) for c in range(K.shape[1])]
    if not gens:
        return Ideal([], p)
    return Ideal(prune_map(ModuleMap.row(gens, p)).entries[0], p)


def rao_support(I):
    """Linear forms l with l * M_{top-1} = 0 in the top piece of the Rao
    module M, i.e. the linear annihilator of the lowest piece of Ext^4."""
    res, _ = _surface_resolution(I)
    R = rao_module(I, with_annihilator=False)
    if R.is_zero:
        raise CohomologyError("the Rao module is zero")
    C = R.ext4
    d0 = -5 - max(R.degrees())
    p = I.p
    cols = [C.mult(Polynomial.var(j, p), d0).reshape(-1) for j in range(NVARS)]
    A = np.array(cols, dtype=np.int64).T
    K = la.kernel(A % p, p) if A.size else np.eye(NVARS, dtype=np.int64)
    forms = []
    for c in range(K.shape[1]):
        v = K[:, c]
        forms.append(Polynomial._raw({tuple(1 if t == j else 0 for t in range(NVARS)): int(v[j])
                                      for j in range(NVARS) if v[j]}, p))
    return Ideal(forms, p)


def six_secant_line(I):
    """The line cut out by rao_support when it is a line meeting S in a
    scheme of length 6, else None."""
    try:
        L = rao_support(I)
    except CohomologyError:
        return None
    if len(L.gens) != 3:
        return None
    length = zero_scheme_length(saturate(ideal_sum(I, L)))
    return L if length == 6 else None


@dataclass
class Speciality:
    e: int
    minimal: bool
    unique: bool
    acm: bool
    note: str = ""


def speciality(I):
    """e = max t with h^2(O_S(t)) = h^3(I(t)) != 0, read off Ext^2."""
    res, _ = _surface_resolution(I)
    mods = _steps(res)
    start = -max(mods[2].twists)
    for d in range(start, start + 40):
        if ext_dims(res, 2, [d])[d]:
            return -5 - d
    raise CohomologyError("Ext^2 vanishes in the search window")


def speciality_and_minimality(I):
    e = speciality(I)
    R = rao_module(I, with_annihilator=False)
    minimal = piece_dim(I, e + 4) == 0 if e + 4 >= 0 else True
    unique = minimal and (piece_dim(I, e + 5) == 0 if e + 5 >= 0 else True)
    note = ""
    if R.is_zero:
        note = "arithmetically Cohen-Macaulay: minimality criterion not applicable"
    return Speciality(e, minimal, unique, R.is_zero, note)
