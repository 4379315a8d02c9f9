"""Graded free modules, syzygies, minimal free resolutions, Betti tables,
Hilbert series and Ext modules.

Free modules are F = sum R(-t_j); `twists` lists the generator degrees t_j.
A ModuleMap F -> G has entries[i][j] of degree F.twists[j] - G.twists[i].
Kernels, images and homology are computed one graded piece at a time by
linear algebra over F_p.
"""

from fractions import Fraction
from math import comb

import numpy as np

from . import _linalg as la
from ._graded import (
    map_matrix, module_dim, module_vec, multiply_by_variables, vec_to_module,
)
from .groebner import Ideal, hilbert_numerator, leading_monomials
from .ring import DEFAULT_PRIME, Polynomial, dim_R


class ModuleError(ValueError):
    pass


class FreeModule:
    """The graded free module sum R(-t) over the twist list."""

    __slots__ = ("twists",)

    def __init__(self, twists):
        self.twists = tuple(int(t) for t in twists)

    @property
    def rank(self):
        return len(self.twists)

    def dim(self, n):
        return module_dim(self.twists, n)

    def dual(self):
        return FreeModule([-t for t in self.twists])

    def __eq__(self, other):
        return isinstance(other, FreeModule) and self.twists == other.twists

    def __hash__(self):
        return hash(self.twists)

    def __repr__(self):
        return f"FreeModule({list(self.twists)})"


def _zero(p):
    return Polynomial._raw({}, p)


class ModuleMap:
    """Homogeneous map of graded free modules given by a polynomial matrix."""

    def __init__(self, source, target, entries, p=DEFAULT_PRIME, check=True):
        self.source = source if isinstance(source, FreeModule) else FreeModule(source)
        self.target = target if isinstance(target, FreeModule) else FreeModule(target)
        self.p = p
        if len(entries) != self.target.rank or any(len(r) != self.source.rank for r in entries):
            raise ModuleError("matrix shape does not match the modules")
        self.entries = [list(r) for r in entries]
        if check:
            for i, b in enumerate(self.target.twists):
                for j, a in enumerate(self.source.twists):
                    f = self.entries[i][j]
                    if f.is_zero():
                        continue
                    if not f.is_homogeneous() or f.degree() != a - b:
                        raise ModuleError(
                            f"entry ({i},{j}) has degree {f.degree()}, expected {a - b}")
        self._cache = {}

    @classmethod
    def from_columns(cls, source, target, cols, p=DEFAULT_PRIME, check=True):
        target = target if isinstance(target, FreeModule) else FreeModule(target)
        source = source if isinstance(source, FreeModule) else FreeModule(source)
        entries = [[cols[j][i] for j in range(len(cols))] for i in range(target.rank)]
        return cls(source, target, entries, p, check)

    @classmethod
    def row(cls, forms, p=None):
        """The map sum R(-deg f_j) -> R given by a row of forms."""
        p = p if p is not None else (forms[0].p if forms else DEFAULT_PRIME)
        return cls([f.degree() for f in forms], [0], [list(forms)], p)

    def column(self, j):
        return [self.entries[i][j] for i in range(self.target.rank)]

    def matrix(self, n):
        """Degree-n matrix: target_n x source_n acting on column vectors."""
        M = self._cache.get(n)
        if M is None:
            M = map_matrix(self.entries, self.source.twists, self.target.twists, n, self.p)
            if len(self._cache) < 64:
                self._cache[n] = M
        return M

    def is_zero(self):
        return all(f.is_zero() for r in self.entries for f in r)

    def compose(self, other):
        """self o other."""
        if other.target != self.source:
            raise ModuleError("maps are not composable")
        p = self.p
        out = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                s = _zero(p)
                for k in range(self.source.rank):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.terms and b.terms:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return ModuleMap(other.source, self.target, out, p, check=False)

    def transpose(self):
        """The dual map Hom(target, R) -> Hom(source, R)."""
        ent = [[self.entries[i][j] for i in range(self.target.rank)] for j in range(self.source.rank)]
        return ModuleMap(self.target.dual(), self.source.dual(), ent, self.p, check=False)

    def apply(self, vec):
        """Image of a module element (list of forms) of the source."""
        p = self.p
        out = []
        for i in range(self.target.rank):
            s = _zero(p)
            for j in range(self.source.rank):
                if self.entries[i][j].terms and vec[j].terms:
                    s = s + self.entries[i][j] * vec[j]
            out.append(s)
        return out

    def has_unit_entry(self):
        return any(f.terms and f.degree() == 0 for r in self.entries for f in r)

    def __repr__(self):
        return f"ModuleMap({list(self.source.twists)} -> {list(self.target.twists)})"


def identity_map(F, p=DEFAULT_PRIME):
    ent = [[Polynomial.constant(1, p) if i == j else _zero(p) for j in range(F.rank)]
           for i in range(F.rank)]
    return ModuleMap(F, F, ent, p)


# --- graded pieces of submodules ------------------------------------------


def _column_vectors(cols, twists, degrees, n):
    """Columns (module elements of given degrees) that live in degree n."""
    vs = [module_vec(c, twists, n) for c, d in zip(cols, degrees) if d == n]
    if not vs:
        return np.zeros((module_dim(twists, n), 0), np.int64)
    return np.array(vs, dtype=np.int64).T


def _basis_cols(V, p):
    """Column basis (RREF rows transposed) of the span of the columns of V."""
    if V.shape[1] == 0:
        return V
    return la.rref(V.T, p)[0].T


def minimal_generators(phi, max_degree=None):
    """Indices of a minimal generating subset of the columns of phi
    (as generators of the image submodule), scanning degrees upward."""
    p = phi.p
    tw = phi.target.twists
    degs = phi.source.twists
    if not degs:
        return []
    top = max(degs) if max_degree is None else max_degree
    keep = []
    prev = None
    for n in range(min(degs), top + 1):
        base = multiply_by_variables(prev, tw, n - 1) if prev is not None and prev.shape[1] else \
            np.zeros((module_dim(tw, n), 0), np.int64)
        idx = [j for j, d in enumerate(degs) if d == n]
        cand = np.array([module_vec(phi.column(j), tw, n) for j in idx], dtype=np.int64).T \
            if idx else np.zeros((module_dim(tw, n), 0), np.int64)
        if idx:
            chosen = la.independent_extension(base.T, cand.T, p)
            keep.extend(idx[c] for c in chosen)
        allv = np.hstack([base, cand]) if cand.shape[1] else base
        prev = _basis_cols(allv, p)
    return sorted(keep)


def prune_map(phi):
    """Restrict phi to a minimal set of generators of its image."""
    keep = minimal_generators(phi)
    src = FreeModule([phi.source.twists[j] for j in keep])
    ent = [[r[j] for j in keep] for r in phi.entries]
    return ModuleMap(src, phi.target, ent, phi.p, check=False)


def kernel_generators(phi, max_degree, min_degree=None):
    """Minimal generators of ker(phi) in degrees <= max_degree.

    Returns a ModuleMap K -> source(phi) whose columns are the generators.
    """
    p = phi.p
    tw = phi.source.twists
    if not tw:
        return ModuleMap([], [], [], p)
    lo = min(tw) if min_degree is None else min_degree
    cols, degs = [], []
    prev = None
    for n in range(lo, max_degree + 1):
        dim_n = module_dim(tw, n)
        if dim_n == 0:
            prev = np.zeros((0, 0), np.int64)
            continue
        M = phi.matrix(n)
        K = la.kernel(M, p) if M.shape[0] else np.eye(dim_n, dtype=np.int64)
        if K.shape[1] == 0:
            prev = K
            continue
        if prev is not None and prev.shape[1] and module_dim(tw, n - 1):
            base = multiply_by_variables(prev, tw, n - 1)
        else:
            base = np.zeros((dim_n, 0), np.int64)
        if base.shape[1]:
            B = la.rref(base.T, p)[0]
        else:
            B = np.zeros((0, dim_n), np.int64)
        if B.shape[0] < K.shape[1]:
            for c in la.independent_extension(B, K.T, p):
                cols.append(vec_to_module(K[:, c], tw, n, p))
                degs.append(n)
        prev = K
    return ModuleMap.from_columns(FreeModule(degs), phi.source, cols, p, check=False)


def syzygy_map(phi, max_degree=None):
    """Map onto the kernel of phi (generators of the syzygy module).

    Without max_degree the bound max(source twists) + sum of the largest
    entry degree over the target rank + 1 is used, which covers the
    Koszul-type and determinantal inputs this is used for; pass an
    explicit bound for anything larger.
    """
    if max_degree is None:
        dmax = max((f.degree() for r in phi.entries for f in r if f.terms), default=0)
        top = max(phi.source.twists, default=0)
        max_degree = top + max(1, dmax) * max(1, phi.target.rank) + 1
    return kernel_generators(phi, max_degree)


# --- resolutions ------------------------------------------------------------


class FreeResolution:
    """maps[0]: F_0 -> target (presentation of the resolved object's
    generators, e.g. the generator row of an ideal), maps[k]: F_k -> F_{k-1}.
    For an ideal, F_0 carries the generators."""

    def __init__(self, maps, p=DEFAULT_PRIME, resolves="ideal"):
        self.maps = list(maps)
        self.p = p
        self.resolves = resolves

    @property
    def modules(self):
        return [m.source for m in self.maps]

    def length(self):
        return len(self.maps) - 1

    def __len__(self):
        return len(self.maps)


def ideal_generator_map(I):
    """The row map F_0 -> R of minimal generators of I."""
    row = ModuleMap.row(I.gens, I.p)
    return prune_map(row)


def free_resolution(obj, max_length=5, degree_bound=None):
    """Minimal free resolution of an ideal (F_0 = generators) or of the
    image/cokernel data of a ModuleMap (F_0 = its source, pruned).

    degree_bound(k) gives the largest degree in which syzygies of step k
    are searched; by default it is regularity + k + 1 for ideals (using
    the Castelnuovo-Mumford regularity from a generic initial ideal)."""
    if isinstance(obj, Ideal):
        I = obj
        p = I.p
        if I.is_zero():
            return FreeResolution([ModuleMap([], [0], [[]], p)], p)
        d0 = ideal_generator_map(I)
        if degree_bound is None:
            from .idealops import regularity
            reg = regularity(I)
            degree_bound = lambda k: reg + k + 1
        maps = [d0]
    else:
        phi = obj
        p = phi.p
        d0 = prune_map(phi)
        maps = [d0]
        if degree_bound is None:
            raise ModuleError("a degree bound is needed for module resolutions")
    cur = maps[0]
    for k in range(1, max_length + 1):
        if cur.source.rank == 0:
            break
        K = kernel_generators(cur, degree_bound(k))
        if K.source.rank == 0:
            break
        maps.append(K)
        cur = K
    return FreeResolution(maps, p)


def minimalize(res):
    """Cancel unit entries pairwise until no differential has a nonzero
    constant entry."""
    p = res.p
    maps = [ModuleMap(m.source, m.target, [list(r) for r in m.entries], p, check=False)
            for m in res.maps]
    changed = True
    while changed:
        changed = False
        for k in range(1, len(maps)):
            d = maps[k]
            hit = None
            for i, r in enumerate(d.entries):
                for j, f in enumerate(r):
                    if f.terms and f.degree() == 0:
                        hit = (i, j, f.terms[(0, 0, 0, 0, 0)])
                        break
                if hit:
                    break
            if not hit:
                continue
            i, j, c = hit
            inv = pow(c, p - 2, p)
            # new d_k: eliminate row i, column j
            ent = []
            for a in range(d.target.rank):
                if a == i:
                    continue
                row = []
                for b in range(d.source.rank):
                    if b == j:
                        continue
                    v = d.entries[a][b]
                    if d.entries[a][j].terms and d.entries[i][b].terms:
                        v = v - (d.entries[a][j] * d.entries[i][b]).scale(inv)
                    row.append(v)
                ent.append(row)
            src = FreeModule([t for b, t in enumerate(d.source.twists) if b != j])
            tgt = FreeModule([t for a, t in enumerate(d.target.twists) if a != i])
            maps[k] = ModuleMap(src, tgt, ent, p, check=False)
            # previous map loses column i
            prv = maps[k - 1]
            maps[k - 1] = ModuleMap(tgt, prv.target,
                                    [[f for b, f in enumerate(r) if b != i] for r in prv.entries],
                                    p, check=False)
            # next map loses row j
            if k + 1 < len(maps):
                nxt = maps[k + 1]
                maps[k + 1] = ModuleMap(nxt.source, src,
                                        [r for a, r in enumerate(nxt.entries) if a != j],
                                        p, check=False)
            changed = True
            break
    maps = [m for m in maps if m.source.rank or m is maps[0]]
    return FreeResolution(maps, p, res.resolves)


def is_minimal(res):
    return not any(m.has_unit_entry() for m in res.maps[1:])


def betti(res):
    """Betti table {(i, j): rank} with i = 0 for the generators."""
    tab = {}
    for i, m in enumerate(res.maps):
        for t in m.source.twists:
            tab[(i, t)] = tab.get((i, t), 0) + 1
    return dict(sorted(tab.items()))


def betti_columns(tab):
    """Betti table as a list of dicts {twist: rank}, one per step."""
    n = max((i for i, _ in tab), default=-1) + 1
    out = [dict() for _ in range(n)]
    for (i, j), r in sorted(tab.items()):
        out[i][j] = r
    return out


def format_betti(tab):
    return "betti { " + " ".join(f"{i} {j} {r};" for (i, j), r in sorted(tab.items())) + " }"


def parse_betti(text):
    s = text.strip()
    if not (s.startswith("betti {") and s.endswith("}")):
        raise ValueError("not a betti block")
    body = s[len("betti {"):-1]
    tab = {}
    for item in body.split(";"):
        item = item.strip()
        if not item:
            continue
        i, j, r = (int(x) for x in item.split())
        tab[(i, j)] = r
    return tab


def betti_numerator(tab):
    """Numerator of the Hilbert series of R/I implied by the Betti table of I:
    1 - sum_i (-1)^i beta_{i,j} t^j, as a coefficient list."""
    top = max((j for _, j in tab), default=0)
    out = [0] * (top + 1)
    out[0] = 1
    for (i, j), r in tab.items():
        out[j] -= (-1) ** i * r
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def check_complex(res, degrees):
    """d o d = 0 and exactness at interior steps in the given degrees.
    Returns a list of failures (empty when fine)."""
    bad = []
    p = res.p
    for k in range(1, len(res.maps)):
        comp = res.maps[k - 1].compose(res.maps[k])
        if not comp.is_zero():
            bad.append(("dd", k))
    for k in range(len(res.maps) - 1):
        for n in degrees:
            A = res.maps[k].matrix(n)
            B = res.maps[k + 1].matrix(n)
            dimk = res.maps[k].source.dim(n)
            ker = dimk - (la.rank(A, p) if A.size else 0)
            im = la.rank(B, p) if B.size else 0
            if ker != im:
                bad.append(("exact", k, n))
    # injectivity of the last map
    last = res.maps[-1]
    for n in degrees:
        A = last.matrix(n)
        if last.source.dim(n) and (la.rank(A, p) if A.size else 0) != last.source.dim(n):
            bad.append(("inj", len(res.maps) - 1, n))
    return bad


# --- Hilbert series and polynomial ---------------------------------------


class HilbertData:
    """Hilbert series numerator N(t) (series N(t)/(1-t)^5) of R/I and the
    Hilbert polynomial with Fraction coefficients (lowest degree first)."""

    def __init__(self, numerator):
        self.numerator = list(numerator)
        self.poly = _hilbert_polynomial(self.numerator)

    @property
    def dimension(self):
        """Projective dimension of V(I); -1 for the empty set."""
        return len(self.poly) - 1 if any(self.poly) else -1

    @property
    def degree(self):
        d = self.dimension
        if d < 0:
            return 0
        lead = self.poly[d]
        f = 1
        for k in range(2, d + 1):
            f *= k
        return int(lead * f)

    def value(self, t):
        return sum(c * t ** k for k, c in enumerate(self.poly))

    def hilbert_function(self, n):
        return sum(c * dim_R(n - k) for k, c in enumerate(self.numerator))

    def surface_invariants(self):
        """(d, pi, chi) for a surface."""
        if self.dimension != 2:
            raise ModuleError(f"not a surface (dimension {self.dimension})")
        d = self.degree
        lin = self.poly[1]
        pi = Fraction(d + 2, 2) - lin
        chi = self.poly[0]
        return d, int(pi), int(chi)

    def poly_str(self):
        terms = []
        for k in range(len(self.poly) - 1, -1, -1):
            c = self.poly[k]
            if c:
                terms.append(f"{c}*t^{k}" if k else f"{c}")
        return " + ".join(terms) if terms else "0"


def _binom_poly(shift):
    """C(t + shift + 4, 4) as a polynomial in t (list of Fractions)."""
    poly = [Fraction(1)]
    for k in range(1, 5):
        # multiply by (t + shift + k)
        a = shift + k
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * a
            nxt[i + 1] += c
        poly = nxt
    return [c / 24 for c in poly]


def _hilbert_polynomial(num):
    out = [Fraction(0)] * 5
    for k, c in enumerate(num):
        if c:
            bp = _binom_poly(-k)
            for i, v in enumerate(bp):
                out[i] += c * v
    while out and out[-1] == 0:
        out.pop()
    return out


def hilbert(I):
    """Hilbert data of R/I from the leading-term ideal of its Groebner basis."""
    if isinstance(I, Ideal):
        if I.is_zero():
            return HilbertData([1])
        return HilbertData(hilbert_numerator(leading_monomials(I)))
    raise ModuleError("hilbert expects an Ideal")


# --- presented modules and Ext ------------------------------------------------


class GradedPieces:
    """A graded module known through the dimensions of its pieces in a
    degree window, optionally with a presentation coker(rel: F1 -> F0)."""

    def __init__(self, dims, presentation=None):
        self.dims = dict(dims)
        self.presentation = presentation

    def hilbert_function(self, lo=None, hi=None):
        ks = [k for k, v in sorted(self.dims.items())
              if (lo is None or k >= lo) and (hi is None or k <= hi)]
        return [self.dims[k] for k in ks]

    def nonzero_degrees(self):
        return [k for k, v in sorted(self.dims.items()) if v]

    def total(self):
        return sum(self.dims.values())


def quotient_resolution(res):
    """Differentials of the resolution of R/I as a list [d1, d2, ...] with
    d1 : F_0 -> R the generator row."""
    return list(res.maps)


def ext_dims(res, i, degrees):
    """dim Ext^i(R/I, R)_d for d in degrees, from the resolution of I.

    The resolution of R/I is R <- F_0 <- F_1 <- ...; its step i free
    module is F_{i-1} (F_{-1} = R).  Ext^i is the homology of the dual
    complex at step i."""
    p = res.p
    maps = res.maps
    mods = [FreeModule([0])] + [m.source for m in maps]   # step 0..len
    out = {}
    for d in degrees:
        if i < 0 or i >= len(mods):
            out[d] = 0
            continue
        # dual map into step i: (d_i)^T : mods[i-1]^* -> mods[i]^*
        # dual map out of step i: (d_{i+1})^T : mods[i]^* -> mods[i+1]^*
        dim_i = mods[i].dual().dim(d)
        if dim_i == 0:
            out[d] = 0
            continue
        if i + 1 < len(mods):
            A = maps[i].transpose().matrix(d)
            rk_out = la.rank(A, p) if A.size else 0
        else:
            rk_out = 0
        if i >= 1:
            B = maps[i - 1].transpose().matrix(d)
            rk_in = la.rank(B, p) if B.size else 0
        else:
            rk_in = 0
        out[d] = dim_i - rk_out - rk_in
    return out


def ext_module(res_or_ideal, i, degrees=None):
    """Ext^i(R/I, R) in a degree window, as GradedPieces.  For the top
    index the module is a cokernel and its presentation is attached."""
    res = res_or_ideal if isinstance(res_or_ideal, FreeResolution) else free_resolution(res_or_ideal)
    mods = [FreeModule([0])] + [m.source for m in res.maps]
    if i < 0 or i >= len(mods):
        return GradedPieces({}, None)
    if degrees is None:
        tw = [t for M in mods for t in M.twists]
        degrees = range(-max(tw) - 1, -min(tw) + 8)
    dims = ext_dims(res, i, degrees)
    pres = None
    if i == len(mods) - 1 and i >= 1:
        pres = res.maps[i - 1].transpose()
    elif i == 0 and len(res.maps) and res.maps[0].is_zero():
        pres = None
    return GradedPieces(dims, pres)


def cokernel_dims(phi, degrees):
    p = phi.p
    out = {}
    for d in degrees:
        n = phi.target.dim(d)
        if n == 0:
            out[d] = 0
            continue
        A = phi.matrix(d)
        out[d] = n - (la.rank(A, p) if A.size else 0)
    return out
