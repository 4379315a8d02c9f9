"""Operations on homogeneous ideals: sums, intersections, quotients,
saturation, random elements, dimension and degree, length of zero-
dimensional schemes, regularity and Jacobian smoothness.

Intersections and quotients are computed one graded piece at a time as
kernels of F_p-linear maps, so everything stays inside grevlex.  Those
routines take a degree bound; the defaults are discussed per function.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _linalg as la
from ._graded import (
    mult_matrix, multiply_by_variables, poly_to_vec, quotient_projection,
    span_in_degree, vec_to_poly,
)
from .groebner import Ideal, IdealError, buchberger
from .ring import NVARS, Polynomial, dim_R, make_rng, monomials_of_degree


UNIT = "unit"
ZERO = "zero"


def _ideal(gens, p):
    return Ideal(list(gens), p)


def unit_ideal(p):
    return Ideal([Polynomial.constant(1, p)], p)


def is_unit(I):
    return any(g.degree() == 0 for g in I.gens)


# --- coordinate changes --------------------------------------------------


class CoordinateChange:
    """The substitution x_i -> sum_j A[i, j] x_j applied to forms."""

    def __init__(self, A, p):
        self.A = np.asarray(A, dtype=np.int64) % p
        self.p = p
        self._T = {}

    @classmethod
    def random(cls, seed, p):
        rng = make_rng(seed)
        while True:
            A = rng.integers(0, p, size=(NVARS, NVARS))
            if la.rank(A, p) == NVARS:
                return cls(A, p)

    def inverse(self):
        n = NVARS
        R, _ = la.rref(np.hstack([self.A, np.eye(n, dtype=np.int64)]), self.p)
        return CoordinateChange(R[:, n:], self.p)

    def _matrix(self, d):
        """Matrix of the substitution on R_d (columns = images of monomials)."""
        T = self._T.get(d)
        if T is not None:
            return T
        p = self.p
        if d == 0:
            T = np.ones((1, 1), np.int64)
        else:
            prev = self._matrix(d - 1)
            monos = monomials_of_degree(d)
            T = np.zeros((dim_R(d), len(monos)), np.int64)
            prev_index = {m: i for i, m in enumerate(monomials_of_degree(d - 1))}
            for k in range(NVARS):
                cols = [i for i, m in enumerate(monos) if m[k] and not any(m[:k])]
                if not cols:
                    continue
                src = [prev_index[monos[i][:k] + (monos[i][k] - 1,) + monos[i][k + 1:]]
                       for i in cols]
                L = Polynomial._raw({tuple(1 if t == j else 0 for t in range(NVARS)): int(self.A[k, j])
                                     for j in range(NVARS) if self.A[k, j]}, p)
                M = mult_matrix(L, d - 1, 1, p)
                T[:, cols] = la.matmul(M, prev[:, src], p)
        self._T[d] = T
        return T

    def apply(self, f):
        if f.is_zero():
            return f
        d = f.degree()
        v = la.matmul(self._matrix(d), poly_to_vec(f, d).reshape(-1, 1), self.p)[:, 0]
        return vec_to_poly(v, d, self.p)

    def apply_ideal(self, I):
        return Ideal([self.apply(g) for g in I.gens], I.p)


# --- regularity ------------------------------------------------------------


def regularity(I, seed=1):
    """Castelnuovo-Mumford regularity of I, read off as the top degree of
    the reduced grevlex Groebner basis in random coordinates (generic
    initial ideal).  Cached on the ideal."""
    cached = getattr(I, "_reg", None)
    if cached is not None:
        return cached
    if I.is_zero():
        reg = 0
    elif is_unit(I):
        reg = 0
    else:
        J = CoordinateChange.random(seed, I.p).apply_ideal(I)
        reg = max(g.degree() for g in J.gb())
    I._reg = reg
    return reg


# --- graded pieces -----------------------------------------------------------


class _Pieces:
    """Cached RREF bases of the graded pieces of an ideal."""

    def __init__(self, I):
        self.I = I
        self.cache = {}
        self.gens = I.gb() if len(I.gens) > 12 else I.gens

    def rref(self, n):
        r = self.cache.get(n)
        if r is None:
            r = span_in_degree(self.gens, n, self.I.p) if n >= 0 else \
                (np.zeros((0, 0), np.int64), np.zeros(0, np.int64))
            self.cache[n] = r
        return r

    def dim(self, n):
        return len(self.rref(n)[1])

    def projection(self, n):
        E, piv = self.rref(n)
        P, _ = quotient_projection(E, piv, n)
        return P % self.I.p


def _generators_from_pieces(piece, lo, hi, p):
    """Minimal generators of the ideal whose degree-n piece (columns of
    piece(n) in R_n) is given, for lo <= n <= hi."""
    gens = []
    prev = None
    for n in range(lo, hi + 1):
        V = piece(n)
        if V.shape[1] == 0:
            prev = V
            continue
        if prev is not None and prev.shape[1]:
            base = multiply_by_variables(prev, [0], n - 1)
            B = la.rref(base.T, p)[0]
        else:
            B = np.zeros((0, dim_R(n)), np.int64)
        if B.shape[0] < V.shape[1]:
            for c in la.independent_extension(B, V.T, p):
                gens.append(vec_to_poly(V[:, c], n, p))
        if V.shape[1] == dim_R(n):
            break
        prev = V
    return gens


# --- operations ----------------------------------------------------------------


def ideal_sum(I, J):
    if I.p != J.p:
        raise IdealError("ideals over different fields")
    return Ideal(I.gens + J.gens, I.p)


def _default_bound(*ideals):
    return sum(regularity(I) for I in ideals)


def ideal_intersection(I, J, max_degree=None):
    """Generators of I cap J.  In each degree the piece is the kernel of the
    concatenated map [I_n | -J_n], projected onto the I side, which here
    amounts to the I_n vectors vanishing modulo J_n.  The default degree
    bound is reg(I) + reg(J)."""
    p = I.p
    if I.is_zero() or J.is_zero():
        return Ideal([], p)
    if is_unit(I):
        return J
    if is_unit(J):
        return I
    hi = max_degree if max_degree is not None else _default_bound(I, J)
    PI, PJ = _Pieces(I), _Pieces(J)
    lo = max(min(I.degrees()), min(J.degrees()))

    def piece(n):
        E, _ = PI.rref(n)
        if E.shape[0] == 0:
            return np.zeros((dim_R(n), 0), np.int64)
        A = E.T                                     # basis of I_n as columns
        K = la.kernel(la.matmul(PJ.projection(n), A, p), p)
        if K.shape[1] == 0:
            return K.reshape(dim_R(n), 0)
        return la.matmul(A, K, p)

    return Ideal(_generators_from_pieces(piece, lo, hi, p), p)


def ideal_quotient(I, J, max_degree=None):
    """Generators of I : J = {f : f J in I}.  The degree-n piece is the
    common kernel of f -> f g (mod I) over the generators g of J.  The
    default degree bound is reg(I) + 1; linkage callers pass m + n."""
    p = I.p
    if J.is_zero() or is_unit(I):
        return unit_ideal(p)
    if I.is_zero():
        return Ideal([], p)
    hi = max_degree if max_degree is not None else regularity(I) + 1
    PI = _Pieces(I)
    jg = sorted(J.gens, key=lambda g: g.degree())

    def piece(n):
        K = np.eye(dim_R(n), dtype=np.int64)
        for g in jg:
            dg = g.degree()
            P = PI.projection(n + dg)
            if P.shape[0] == 0:
                continue
            M = la.matmul(P, la.matmul(mult_matrix(g, n, dg, p), K, p), p)
            Z = la.kernel(M, p)
            K = la.matmul(K, Z, p)
            if K.shape[1] == 0:
                break
        return K

    gens = _generators_from_pieces(piece, 0, hi, p)
    return Ideal(gens, p)


def irrelevant_ideal(p):
    return Ideal([Polynomial.var(i, p) for i in range(NVARS)], p)


def _saturate_generic(I, seed):
    """Saturation via a random coordinate change followed by I : x4^oo,
    read off from the grevlex basis by removing powers of x4."""
    p = I.p
    ch = CoordinateChange.random(seed, p)
    J = ch.apply_ideal(I)
    G = J.gb()
    out = []
    for g in G:
        k = min(m[4] for m in g.terms)
        if k:
            g = Polynomial._raw({m[:4] + (m[4] - k,): c for m, c in g.terms.items()}, p)
        out.append(g)
    inv = ch.inverse()
    back = [inv.apply(g) for g in out]
    res = Ideal(buchberger(back, p=p), p)
    return res


def _saturate_colon(I, max_iter=20, max_degree=None):
    """Saturation by iterated colon with the irrelevant ideal."""
    m = irrelevant_ideal(I.p)
    cur = I
    for it in range(1, max_iter + 1):
        bound = max_degree if max_degree is not None else regularity(cur) + 1
        nxt = ideal_quotient(cur, m, bound)
        if same_ideal(nxt, cur):
            return cur, it
        cur = nxt
    raise IdealError("saturation did not stabilize")


def saturate(I, method="generic", seed=7):
    """Saturation of I with respect to the irrelevant ideal."""
    p = I.p
    if I.is_zero():
        return I
    if is_unit(I):
        return unit_ideal(p)
    if method == "generic":
        try:
            return _saturate_generic(I, seed)
        except (IdealError, ZeroDivisionError, ValueError):
            method = "colon"
    if method == "colon":
        return _saturate_colon(I)[0]
    raise ValueError(f"unknown saturation method {method!r}")


def saturation_iterations(I, max_iter=20):
    """Number of colon steps until I : m : m ... stabilizes (1 if I is
    already saturated)."""
    return _saturate_colon(I, max_iter)[1]


def same_ideal(I, J):
    """Equality through the reduced Groebner bases."""
    if I.is_zero() or J.is_zero():
        return I.is_zero() and J.is_zero()
    a = [g.monic() for g in I.gb()]
    b = [g.monic() for g in J.gb()]
    return sorted(map(_key, a)) == sorted(map(_key, b))


def _key(f):
    return tuple(sorted(f.terms.items()))


def contains_ideal(I, J):
    """J subset I."""
    from .groebner import ideal_contains
    return all(ideal_contains(I, g) for g in J.gens)


def random_in_degree(I, d, seed):
    """A random F_p-combination of a basis of I_d."""
    p = I.p
    E, _ = span_in_degree(I.gens, d, p)
    if E.shape[0] == 0:
        raise IdealError(f"the ideal has nothing in degree {d}")
    rng = make_rng(seed)
    c = rng.integers(1, p, size=E.shape[0])
    v = la.matmul(c.reshape(1, -1), E, p)[0]
    return vec_to_poly(v, d, p)


def piece_dim(I, d):
    """dim I_d by linear algebra."""
    return len(span_in_degree(I.gens, d, I.p)[1])


def dimension_and_degree(I):
    """(projective dimension of V(I), degree) from the Hilbert polynomial.
    The zero ideal gives (4, 1); the unit ideal (or any ideal with empty
    zero set) gives (-1, 0)."""
    from .modres import hilbert
    if I.is_zero():
        return 4, 1
    if is_unit(I):
        return -1, 0
    h = hilbert(I)
    return h.dimension, h.degree


def zero_scheme_length(I):
    """Length of a zero-dimensional scheme (its constant Hilbert
    polynomial).  The empty scheme has length 0."""
    from .modres import hilbert
    if is_unit(I):
        return 0
    if I.is_zero():
        raise IdealError("V(I) is not finite")
    h = hilbert(I)
    if h.dimension > 0:
        raise IdealError(f"V(I) is not finite (dimension {h.dimension})")
    return int(h.poly[0]) if h.poly else 0


# --- smoothness -----------------------------------------------------------------


@dataclass
class SmoothnessVerdict:
    smooth: object            # True, False, or None when undecided
    mode: str
    certificate_degree: int = None
    trials: int = 0
    detail: str = ""
    singular_dimension: int = None
    extra: dict = field(default_factory=dict)

    def __str__(self):
        word = {True: "smooth", False: "singular", None: "undecided"}[self.smooth]
        return f"{word} ({self.mode}): {self.detail}"


def jacobian_minors(gens):
    """All 2x2 minors of the Jacobian matrix of the given forms."""
    parts = [[g.diff(i) for i in range(NVARS)] for g in gens]
    out = []
    for a, b in combinations(range(len(gens)), 2):
        for i, j in combinations(range(NVARS), 2):
            m = parts[a][i] * parts[b][j] - parts[a][j] * parts[b][i]
            if not m.is_zero():
                out.append(m)
    return out


def _random_combinations(forms, trials, seed, p):
    """Random combinations of the forms, `trials` of them in each degree
    that occurs (all forms of a degree are kept when there are at most
    `trials`)."""
    rng = make_rng(seed)
    by_deg = {}
    for f in forms:
        by_deg.setdefault(f.degree(), []).append(f)
    out = []
    for d in sorted(by_deg):
        fs = by_deg[d]
        if len(fs) <= trials:
            out.extend(fs)
            continue
        for _ in range(trials):
            acc = Polynomial._raw({}, p)
            for f, c in zip(fs, rng.integers(1, p, size=len(fs))):
                acc = acc + f.scale(int(c))
            out.append(acc)
    return out


def _fills_degree(I, extra, D):
    """Whether (I + extra)_D = R_D, computed in coordinates of (R/I)_D."""
    p = I.p
    PI = _Pieces(I)
    P = PI.projection(D)
    if P.shape[0] == 0:
        return True
    cols = []
    for f in extra:
        df = f.degree()
        if df <= D:
            cols.append(la.matmul(P, mult_matrix(f, D - df, df, p), p))
    if not cols:
        return False
    return la.rank(np.hstack(cols), p) == P.shape[0]


def smoothness_check(I, mode="probabilistic", trials=8, seed=0, max_degree=None):
    """Jacobian criterion for a codimension-2 scheme V(I).

    The scheme is smooth when I together with the 2x2 minors of the
    Jacobian has no projective zeros, i.e. contains all forms of some
    degree D.  In probabilistic mode the minors are replaced by `trials`
    random combinations; a positive answer is still a proof (the
    combinations lie in the minor ideal), while a negative one only means
    that the generic section was singular."""
    from .modres import hilbert
    p = I.p
    h = hilbert(I)
    if h.dimension != 2:
        raise IdealError(f"expected a surface, got dimension {h.dimension}")
    gens = I.gens
    minors = jacobian_minors(gens)
    if mode == "exact":
        extra = minors
    elif mode == "probabilistic":
        extra = _random_combinations(minors, trials, seed, p)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    reg = regularity(I)
    top = max(f.degree() for f in extra) if extra else 0
    hi = max_degree if max_degree is not None else max(reg + 1, top) + 2
    for D in range(max(top, reg), hi + 1):
        if _fills_degree(I, extra, D):
            return SmoothnessVerdict(True, mode, D, trials if mode != "exact" else 0,
                                     f"(I + J)_{D} = R_{D}")
    # undecided by truncation: settle with a Groebner basis
    K = Ideal(list(gens) + list(extra), p)
    hk = hilbert(K)
    if hk.dimension < 0:
        return SmoothnessVerdict(True, mode, None, trials, "singular locus is empty")
    if mode == "exact":
        return SmoothnessVerdict(False, mode, None, 0,
                                 f"singular locus of dimension {hk.dimension}",
                                 singular_dimension=hk.dimension)
    return SmoothnessVerdict(False, mode, None, trials,
                             f"random section of the minors vanishes in dimension {hk.dimension}",
                             singular_dimension=hk.dimension)
