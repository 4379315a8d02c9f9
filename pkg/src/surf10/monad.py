"""Monads built from twisted differentials and line bundles, and the
surface ideals they present.

Sheaves are handled through graded modules.  The module of twisted
sections of Omega^i(i) sits inside the free module L^i W (x) R, where
W = k^5 has basis e_0..e_4 dual to the coordinates, as the kernel of the
Koszul differential d = contraction with x = sum x_j e_j^*; it is
generated in degree 1 by the images d(e_J), |J| = i + 1.

Exterior algebra conventions:
  * basis elements of L^k W and of L^k V (V = W^*) are sorted index tuples;
  * contraction by a single covector t: iota_t(e_I) = sum_s (-1)^s
    t(e_{I_s}) e_{I minus I_s};
  * iota_{a ^ b} = iota_b o iota_a, so a map Omega^i(i) -> Omega^j(j) given
    by w in L^(i-j) V followed by one given by u equals the one given by
    w ^ u.

Every sheaf module here also carries a "kernel map" kappa on its ambient
free module with sections = ker(kappa); Hom computations and the monad to
ideal extraction are linear algebra in graded pieces.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import _linalg as la
from ._graded import module_dim, module_mult_matrix, module_vec, mult_matrix, vec_to_module
from .groebner import Ideal
from .idealops import saturate, same_ideal
from .modres import FreeModule, ModuleMap, kernel_generators
from .ring import DEFAULT_PRIME, NVARS, Polynomial, dim_R, make_rng


class MonadError(ValueError):
    pass


# --- exterior algebra ------------------------------------------------------


def ext_basis(k):
    return list(combinations(range(NVARS), k))


def _ext_index(k):
    return {I: n for n, I in enumerate(ext_basis(k))}


def wedge(a, b, p=DEFAULT_PRIME):
    """Product in the exterior algebra; elements are dicts {tuple: coeff}."""
    out = {}
    for I, c in a.items():
        for J, d in b.items():
            if set(I) & set(J):
                continue
            seq = list(I) + list(J)
            # sign of the sorting permutation
            sign = 1
            for s in range(len(seq)):
                for t in range(s + 1, len(seq)):
                    if seq[s] > seq[t]:
                        sign = -sign
            K = tuple(sorted(seq))
            out[K] = (out.get(K, 0) + sign * c * d) % p
    return {K: c for K, c in out.items() if c}


def covector(coeffs, p=DEFAULT_PRIME):
    """Element of V = L^1 V from its five coordinates."""
    return {(j,): int(c) % p for j, c in enumerate(coeffs) if int(c) % p}


def _iota_single(t, I):
    """iota_{e_t^*}(e_I) as (sign, J) or None."""
    if t not in I:
        return None
    s = I.index(t)
    return (-1) ** s, I[:s] + I[s + 1:]


def contraction_matrix(omega, i, p=DEFAULT_PRIME):
    """Matrix of iota_omega : L^i W -> L^(i-k) W for omega in L^k V,
    columns indexed by ext_basis(i)."""
    if not omega:
        k = 0
    else:
        k = len(next(iter(omega)))
    j = i - k
    if j < 0:
        raise MonadError("contraction degree exceeds the form degree")
    src = ext_basis(i)
    tgt = _ext_index(j)
    M = np.zeros((len(tgt), len(src)), np.int64)
    for T, c in omega.items():
        for col, I in enumerate(src):
            cur = (1, I)
            for t in T:                       # iota_{t1 ^ t2 ...} = ... o iota_{t1}
                r = _iota_single(t, cur[1])
                if r is None:
                    cur = None
                    break
                cur = (cur[0] * r[0], r[1])
            if cur is None:
                continue
            M[tgt[cur[1]], col] += cur[0] * c
    return M % p


def _const(c, p):
    return Polynomial.constant(int(c) % p, p) if int(c) % p else Polynomial._raw({}, p)


def _var(j, p):
    return Polynomial.var(j, p)


def koszul_map(i, p=DEFAULT_PRIME):
    """d : L^i W (x) R(-1) -> L^(i-1) W (x) R as a ModuleMap (generator
    degrees: source twist 1 for every e_I, target twist 0)."""
    src = ext_basis(i)
    tgt = _ext_index(i - 1)
    ent = [[Polynomial._raw({}, p) for _ in src] for _ in tgt]
    for col, I in enumerate(src):
        for s, t in enumerate(I):
            J = I[:s] + I[s + 1:]
            f = _var(t, p) if s % 2 == 0 else _var(t, p).scale(p - 1)
            ent[tgt[J]][col] = ent[tgt[J]][col] + f
    return ModuleMap([1] * len(src), [0] * len(tgt), ent, p)


# --- sheaf modules ------------------------------------------------------------


@dataclass
class SheafModule:
    """A graded module of twisted sections, given inside an ambient free
    module by generators (gens: FreeModule -> ambient) together with a
    kernel map kappa: ambient -> target whose kernel is the module, and
    the relations among the generators."""
    tag: str
    ambient: FreeModule
    gens: ModuleMap
    kappa: ModuleMap
    relations: ModuleMap
    rank: int
    summands: list = field(default_factory=list)

    @property
    def p(self):
        return self.gens.p

    def hilbert_function(self, degrees):
        """dim of the degree-n piece, computed as the kernel of kappa."""
        out = {}
        for n in degrees:
            dn = self.ambient.dim(n)
            if dn == 0:
                out[n] = 0
                continue
            K = self.kappa.matrix(n)
            out[n] = dn - (la.rank(K, self.p) if K.size else 0)
        return out

    def generator_images(self):
        """Generators as (degree, module element of the ambient)."""
        return [(self.gens.source.twists[j], self.gens.column(j))
                for j in range(self.gens.source.rank)]

    def __repr__(self):
        return f"SheafModule({self.tag}, rank {self.rank})"


def _empty_map(src, tgt, p):
    src = src if isinstance(src, FreeModule) else FreeModule(src)
    tgt = tgt if isinstance(tgt, FreeModule) else FreeModule(tgt)
    ent = [[Polynomial._raw({}, p) for _ in range(src.rank)] for _ in range(tgt.rank)]
    return ModuleMap(src, tgt, ent, p, check=False)


def _identity(tw, p):
    n = len(tw)
    ent = [[_const(1 if a == b else 0, p) for b in range(n)] for a in range(n)]
    return ModuleMap(tw, tw, ent, p)


def omega_module(i, p=DEFAULT_PRIME):
    """Twisted sections of Omega^i(i) for 0 <= i <= 4, inside L^i W (x) R."""
    if not 0 <= i <= 4:
        raise MonadError("Omega^i(i) needs 0 <= i <= 4")
    n = comb(NVARS, i)
    amb = FreeModule([0] * n)
    if i == 0:
        return SheafModule("Omega^0(0)", amb, _identity([0], p), _empty_map([0], [], p),
                           _empty_map([], [0], p), 1, [("Omega", 0)])
    gens = koszul_map(i + 1, p) if i < 4 else koszul_map(5, p)
    kappa = koszul_map(i, p)
    # kappa as a map from twist-0 ambient to twist -1 target
    kappa = ModuleMap(amb, FreeModule([-1] * kappa.target.rank), kappa.entries, p)
    if i + 2 <= NVARS:
        rel = koszul_map(i + 2, p)
        rel = ModuleMap(FreeModule([2] * rel.source.rank), FreeModule([1] * rel.target.rank),
                        rel.entries, p)
    else:
        rel = _empty_map([], [1] * gens.source.rank, p)
    return SheafModule(f"Omega^{i}({i})", amb, gens, kappa, rel, comb(4, i), [("Omega", i)])


def line_bundle(t, p=DEFAULT_PRIME):
    """O(t): the free module R(t), generator in degree -t."""
    tw = [-t]
    return SheafModule(f"O({t})", FreeModule(tw), _identity(tw, p),
                       _empty_map(tw, [], p), _empty_map([], tw, p), 1, [("O", t)])


def _block_diag(maps, src_tw, tgt_tw, p):
    ent = [[Polynomial._raw({}, p) for _ in range(len(src_tw))] for _ in range(len(tgt_tw))]
    r0 = c0 = 0
    for m in maps:
        for a in range(m.target.rank):
            for b in range(m.source.rank):
                ent[r0 + a][c0 + b] = m.entries[a][b]
        r0 += m.target.rank
        c0 += m.source.rank
    return ModuleMap(src_tw, tgt_tw, ent, p, check=False)


def direct_sum(mods, tag=None):
    p = mods[0].p
    amb = [t for m in mods for t in m.ambient.twists]
    gsrc = [t for m in mods for t in m.gens.source.twists]
    ktgt = [t for m in mods for t in m.kappa.target.twists]
    rsrc = [t for m in mods for t in m.relations.source.twists]
    gens = _block_diag([m.gens for m in mods], gsrc, amb, p)
    kappa = _block_diag([m.kappa for m in mods], amb, ktgt, p)
    rel = _block_diag([m.relations for m in mods], rsrc, gsrc, p)
    return SheafModule(tag or " + ".join(m.tag for m in mods), FreeModule(amb), gens,
                       kappa, rel, sum(m.rank for m in mods),
                       [s for m in mods for s in m.summands])


def kernel_bundle_G(linear, quadrics, p=DEFAULT_PRIME, extra_trivial=0, check=True):
    """Sections of G = ker(sum O (x) quadric part + sum O(1) (x) linear part
    -> O(2)) for a single row psi = (q_1..q_a, l_1..l_b), optionally plus
    `extra_trivial` copies of O.  The quadrics must have no common zero
    with the linear forms (checked via the Hilbert polynomial)."""
    if check:
        from .modres import hilbert
        J = Ideal(list(quadrics) + list(linear), p)
        if hilbert(J).dimension >= 0:
            raise MonadError("the entries of psi have a common zero")
    a, b = len(quadrics), len(linear)
    amb = FreeModule([0] * a + [-1] * b)
    kappa = ModuleMap(amb, FreeModule([-2]), [list(quadrics) + list(linear)], p)
    K = kernel_generators(kappa, 2)
    rel = kernel_generators(K, 4)
    G = SheafModule(f"G(psi; {a} O + {b} O(1) -> O(2))", amb, K, kappa, rel, a + b - 1,
                    [("G", (a, b))])
    if extra_trivial:
        G = direct_sum([line_bundle(0, p)] * extra_trivial + [G],
                       tag=f"{extra_trivial} O + " + G.tag)
    return G


def kernel_bundle_matrix(psi, src_twists, tgt_twists, p=DEFAULT_PRIME):
    """Sections of ker(psi) for a general matrix psi between free modules
    (e.g. O + 6 O(1) -> 2 O(2))."""
    kappa = ModuleMap(src_twists, tgt_twists, psi, p)
    top = max(src_twists) + 4
    K = kernel_generators(kappa, top)
    rel = kernel_generators(K, top + 2)
    rk = len(src_twists) - len(tgt_twists)
    return SheafModule("ker(psi)", FreeModule(src_twists), K, kappa, rel, rk,
                       [("K", (list(src_twists), list(tgt_twists)))])


# --- maps ---------------------------------------------------------------------


def contraction_hom(i, j, omega, p=DEFAULT_PRIME):
    """The map Omega^i(i) -> Omega^j(j) induced by omega in L^(i-j) V, as
    a ModuleMap between the ambient free modules (a constant matrix)."""
    if i < j:
        raise MonadError("need i >= j")
    M = contraction_matrix(omega, i, p) if omega else np.zeros((comb(NVARS, j), comb(NVARS, i)), np.int64)
    ent = [[_const(M[a, b], p) for b in range(M.shape[1])] for a in range(M.shape[0])]
    return ModuleMap([0] * M.shape[1], [0] * M.shape[0], ent, p)


def apply_map(phi, elem):
    return phi.apply(elem)


# --- Hom spaces -----------------------------------------------------------------


def _elem_vec(elem, twists, n):
    return module_vec(elem, twists, n)


def hom_space(F, G):
    """Degree-0 module maps from the sections of F to those of G.

    A map is fixed by the images n_k in G of the generators of F; the
    images must satisfy kappa_G(n_k) = 0 and the relations of F.  Returns
    (dimension, basis) with each basis element a list of generator images
    (module elements of G's ambient)."""
    p = F.p
    amb = G.ambient.twists
    gdeg = list(F.gens.source.twists)
    blocks = [module_dim(amb, d) for d in gdeg]
    offs = np.concatenate([[0], np.cumsum(blocks)]).astype(int)
    N = int(offs[-1])
    rows = []
    # membership in G
    for k, d in enumerate(gdeg):
        K = G.kappa.matrix(d)
        if K.shape[0] and blocks[k]:
            R = np.zeros((K.shape[0], N), np.int64)
            R[:, offs[k]:offs[k + 1]] = K
            rows.append(R)
    # relations of F: sum_k r_lk n_k = 0
    rel = F.relations
    for l in range(rel.source.rank):
        e = rel.source.twists[l]
        dim_e = module_dim(amb, e)
        if dim_e == 0:
            continue
        R = np.zeros((dim_e, N), np.int64)
        for k in range(rel.target.rank):
            r = rel.entries[k][l]
            if r.is_zero() or blocks[k] == 0:
                continue
            # multiplication by r on each ambient component: E_{d_k} -> E_e
            R[:, offs[k]:offs[k + 1]] = module_mult_matrix(r, amb, gdeg[k], p)
        rows.append(R)
    A = np.vstack(rows) if rows else np.zeros((0, N), np.int64)
    K = la.kernel(A, p) if A.shape[0] else np.eye(N, dtype=np.int64)
    basis = []
    for c in range(K.shape[1]):
        v = K[:, c]
        basis.append([vec_to_module(v[offs[k]:offs[k + 1]], amb, gdeg[k], p)
                      for k in range(len(gdeg))])
    return K.shape[1], basis


def random_hom(F, G, seed):
    """A random element of Hom(F, G), as generator images."""
    p = F.p
    dim, basis = hom_space(F, G)
    if dim == 0:
        raise MonadError("Hom(F, G) is zero")
    rng = make_rng(seed)
    cs = rng.integers(0, p, size=dim)
    out = []
    for k in range(len(basis[0])):
        acc = [Polynomial._raw({}, p) for _ in G.ambient.twists]
        for c, b in zip(cs, basis):
            acc = [a + f.scale(int(c)) for a, f in zip(acc, b[k])]
        out.append(acc)
    return out


# --- rank condition -------------------------------------------------------------


def _linear_coeffs(f, p):
    if isinstance(f, Polynomial):
        v = np.zeros(NVARS, np.int64)
        for m, c in f.terms.items():
            if sum(m) != 1:
                raise MonadError("rank_condition needs linear entries")
            v[m.index(1)] = c
        return v % p
    return np.asarray(f, dtype=np.int64) % p


def rank_condition(rows, i, p=DEFAULT_PRIME, trials=64, seed=0):
    """Necessary condition for a pointwise surjective map of Omega-type:
    every nonzero combination of the rows (each a list of linear forms,
    i.e. elements of V) spans a subspace of V of dimension >= i + 1.

    With r <= 3 rows the check is exact: the combinations c form P^(r-1),
    the row sum_k c_k row_k is a matrix M(c) of covectors, and the
    condition says the (i+1)-minors of M(c) have no common zero.
    Otherwise random combinations are tested."""
    R = [np.array([_linear_coeffs(f, p) for f in row], dtype=np.int64).reshape(-1, NVARS)
         for row in rows]
    nrows = len(R)
    if nrows == 0:
        return True
    m = R[0].shape[0]
    if m < i + 1 and i + 1 > 0:
        return False
    if nrows <= 3:
        from .modres import hilbert
        ent = [[Polynomial._raw({}, p) for _ in range(NVARS)] for _ in range(m)]
        for r in range(nrows):
            for a in range(m):
                for b in range(NVARS):
                    c = int(R[r][a, b])
                    if c:
                        ent[a][b] = ent[a][b] + _var(r, p).scale(c)
        minors = _minors(ent, i + 1, p)
        if not minors:
            return False
        J = Ideal(minors + [_var(t, p) for t in range(nrows, NVARS)], p)
        return hilbert(J).dimension < 0
    rng = make_rng(seed)
    for _ in range(trials):
        c = rng.integers(0, p, size=nrows)
        if not c.any():
            continue
        M = sum(int(ci) * Ri for ci, Ri in zip(c, R)) % p
        if la.rank(M, p) < i + 1:
            return False
    return True


def _minors(ent, k, p):
    m, n = len(ent), len(ent[0])
    out = []
    for rs in combinations(range(m), k):
        for cs in combinations(range(n), k):
            d = _det([[ent[a][b] for b in cs] for a in rs], p)
            if not d.is_zero():
                out.append(d)
    return out


def _det(M, p):
    if len(M) == 1:
        return M[0][0]
    out = Polynomial._raw({}, p)
    for j in range(len(M)):
        if M[0][j].is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        t = M[0][j] * _det(sub, p)
        out = out + t if j % 2 == 0 else out - t
    return out


# --- from a monad to the ideal ---------------------------------------------------


@dataclass
class MonadData:
    """A presentation 0 -> A -> F -> I_S(4) -> 0 with F = ker(beta) inside
    the ambient free module of B.

    alpha: images in B's ambient of the generators of A.
    beta: rows (ModuleMap ambient(B) -> C) cutting F out of B; together
    with B.kappa they cut out the sections of F.
    """
    A: SheafModule
    B: SheafModule
    alpha: list
    beta: ModuleMap = None
    descriptor: dict = field(default_factory=dict)

    @property
    def p(self):
        return self.A.p

    def kappa_total(self):
        k = self.B.kappa
        if self.beta is None or self.beta.target.rank == 0:
            return k
        ent = k.entries + self.beta.entries
        return ModuleMap(k.source, list(k.target.twists) + list(self.beta.target.twists),
                         ent, self.p, check=False)


def check_complex_condition(m):
    """beta o alpha = 0 and alpha lands in the sections of B."""
    kap = m.kappa_total()
    for elem in m.alpha:
        if any(not f.is_zero() for f in kap.apply(elem)):
            return False
    return True


def _solve_psi(m):
    """Row psi': ambient(B) -> R(4) with psi' o alpha = 0, modulo rows that
    vanish on F.  Returns the solution space dimension modulo the trivial
    part and one nontrivial solution (list of forms)."""
    p = m.p
    amb = m.B.ambient.twists
    deg = [t + 4 for t in amb]
    blocks = [dim_R(d) for d in deg]
    offs = np.concatenate([[0], np.cumsum(blocks)]).astype(int)
    N = int(offs[-1])
    rows = []
    for (d, elem) in zip(m.A.gens.source.twists, m.alpha):
        e = d + 4
        R = np.zeros((dim_R(e), N), np.int64)
        for j, f in enumerate(elem):
            if f.is_zero() or blocks[j] == 0:
                continue
            # psi'_j * f_j: coefficient vector of psi'_j (degree deg[j]) -> R_e
            R[:, offs[j]:offs[j + 1]] = mult_matrix(f, deg[j], f.degree(), p)
        rows.append(R)
    A = np.vstack(rows)
    K = la.kernel(A, p)
    # trivial part: h * kappa_row for each row of kappa_total
    kap = m.kappa_total()
    triv = []
    for r in range(kap.target.rank):
        s = kap.target.twists[r]
        hdeg = s + 4
        if hdeg < 0:
            continue
        for mono_vec in np.eye(dim_R(hdeg), dtype=np.int64):
            h = vec_to_module(mono_vec, [0], hdeg, p)[0]
            row = [h * kap.entries[r][j] if not kap.entries[r][j].is_zero() else Polynomial._raw({}, p)
                   for j in range(len(amb))]
            v = np.concatenate([module_vec([row[j]], [0], deg[j]) for j in range(len(amb))])
            triv.append(v)
    T = np.array(triv, dtype=np.int64) if triv else np.zeros((0, N), np.int64)
    Tb = la.rref(T, p)[0] if T.shape[0] else T
    new = la.independent_extension(Tb, K.T, p)
    if not new:
        return 0, None
    v = K[:, new[0]]
    psi = [vec_to_module(v[offs[j]:offs[j + 1]], [0], deg[j], p)[0] for j in range(len(amb))]
    return len(new), psi


def _image_ideal(gens, p):
    from .modres import prune_map
    gens = [f for f in gens if not f.is_zero()]
    if not gens:
        raise MonadError("the monad gives the zero ideal")
    return Ideal(prune_map(ModuleMap.row(gens, p)).entries[0], p)


def cokernel_presentation(m, max_degree=3):
    """Generators of the sections of F (columns of a map K into the ambient)
    and the relations of M = coker(A -> F) in terms of them: syzygies of the
    generators together with the images of alpha."""
    p = m.p
    K = kernel_generators(m.kappa_total(), max_degree)
    gtw = list(K.source.twists)
    rels, rdeg = [], []
    syz = kernel_generators(K, max_degree + 2)
    for j in range(syz.source.rank):
        rels.append(syz.column(j))
        rdeg.append(syz.source.twists[j])
    amb = m.B.ambient.twists
    for d, elem in zip(m.A.gens.source.twists, m.alpha):
        x = la.solve(K.matrix(d), module_vec(elem, amb, d), p)
        if x is None:
            raise MonadError("alpha is not in the span of the generators of F")
        rels.append(vec_to_module(x, gtw, d, p))
        rdeg.append(d)
    rel = ModuleMap.from_columns(rdeg, gtw, rels, p, check=False)
    return K, rel


def dual_embeddings(K, rel, p):
    """Hom(M, R(4))_0 for M = coker(rel) with generators of twists K.source:
    rows h with h_k of degree 4 + twist_k and h . rel = 0."""
    gtw = list(K.source.twists)
    deg = [t + 4 for t in gtw]
    blocks = [dim_R(d) for d in deg]
    offs = np.concatenate([[0], np.cumsum(blocks)]).astype(int)
    N = int(offs[-1])
    rows = []
    for l in range(rel.source.rank):
        e = rel.source.twists[l] + 4
        R = np.zeros((dim_R(e), N), np.int64)
        for k in range(len(gtw)):
            f = rel.entries[k][l]
            if not f.is_zero() and blocks[k]:
                R[:, offs[k]:offs[k + 1]] = mult_matrix(f, deg[k], f.degree(), p)
        rows.append(R)
    A = np.vstack(rows) if rows else np.zeros((0, N), np.int64)
    Kr = la.kernel(A, p)
    sols = []
    for c in range(Kr.shape[1]):
        v = Kr[:, c]
        sols.append([vec_to_module(v[offs[k]:offs[k + 1]], [0], deg[k], p)[0]
                     for k in range(len(gtw))])
    return sols


def ideal_from_monad(m, max_degree=3, method="presentation", check_saturated=True):
    """The saturated ideal I_S presented by the monad m.

    method "presentation": present M = coker(A -> F) on generators of the
    sections of F, compute Hom(M, R(4))_0 (one-dimensional for a rank-one
    torsion-free cokernel) and take the image of its generator.
    method "ambient": solve for a row psi' on the ambient free module of B
    killing alpha, modulo rows vanishing on F, and apply it to the
    generators of F.  Both give I_S(4) as the image of F -> O(4).
    """
    p = m.p
    if not check_complex_condition(m):
        raise MonadError("alpha does not land in ker(beta)")
    if method == "presentation":
        K, rel = cokernel_presentation(m, max_degree)
        sols = dual_embeddings(K, rel, p)
        if len(sols) != 1:
            raise MonadError(f"Hom(M, R(4)) has dimension {len(sols)}, expected 1")
        I = _image_ideal(sols[0], p)
    elif method == "ambient":
        dim, psi = _solve_psi(m)
        if dim != 1:
            raise MonadError(f"expected a one-dimensional space of maps to O(4), found {dim}")
        K = kernel_generators(m.kappa_total(), max_degree)
        gens = []
        for j in range(K.source.rank):
            f = Polynomial._raw({}, p)
            for a, b in zip(psi, K.column(j)):
                if not a.is_zero() and not b.is_zero():
                    f = f + a * b
            gens.append(f)
        I = _image_ideal(gens, p)
    else:
        raise MonadError(f"unknown method {method!r}")
    if check_saturated:
        S = saturate(I)
        if not same_ideal(S, I):
            I = S
    return I


def euler_characteristic_check(m, I, degrees=range(0, 5)):
    """chi(F(n)) - chi(A(n)) = chi(I_S(n + 4)) for n in degrees, with
    chi(I_S(t)) = C(t+4, 4) - P_S(t)."""
    from .modres import hilbert
    h = hilbert(I)
    out = {}
    for n in degrees:
        lhs = _chi(m.B.summands, n) - _chi(m.A.summands, n) - _chi_C(m, n)
        rhs = comb(n + 8, 4) - h.value(n + 4)
        out[n] = (lhs, int(rhs))
    return all(a == b for a, b in out.values()), out


def _chi_O(t):
    # chi(O(t)) on P^4 as the polynomial C(t+4, 4)
    return (t + 4) * (t + 3) * (t + 2) * (t + 1) // 24


def _chi(summands, n):
    tot = 0
    for kind, v in summands:
        if kind == "O":
            tot += _chi_O(n + v)
        elif kind == "Omega":
            i = v
            if i == 0:
                tot += _chi_O(n)
            else:
                # Koszul: 0 -> L^5 O(i-5) -> ... -> L^(i+1) O(-1) -> Omega^i(i) -> 0
                tot += sum((-1) ** (k - 1) * comb(5, i + k) * _chi_O(n - k)
                           for k in range(1, 6 - i))
        elif kind == "G":
            a, b = v
            tot += a * _chi_O(n) + b * _chi_O(n + 1) - _chi_O(n + 2)
        elif kind == "K":
            src, tgt = v
            tot += sum(_chi_O(n - t) for t in src) - sum(_chi_O(n - t) for t in tgt)
        else:
            raise MonadError(f"no Euler characteristic for {kind}")
    return tot


def _chi_C(m, n):
    if m.beta is None:
        return 0
    return sum(_chi_O(n - t) for t in m.beta.target.twists)


# --- concrete monads ---------------------------------------------------------------


def _rand_ext(k, rng, p):
    return {I: int(rng.integers(0, p)) for I in ext_basis(k)}


def _images_under(omega_src, blocks, p):
    """Images of the generators of Omega^i(i) (i = omega_src) under a map
    given block-wise: blocks is a list of (j, omega) meaning contraction
    into an Omega^j(j) block, concatenated."""
    src = omega_module(omega_src, p)
    out = []
    for d, g in src.generator_images():
        elem = []
        for j, om in blocks:
            phi = contraction_hom(omega_src, j, om, p)
            elem.extend(phi.apply(g))
        out.append(elem)
    return out


def _beta_rows(B_blocks, C_rows, p):
    """ModuleMap from the ambient of B (blocks of Omega^1(1) or O) to
    sum O given by covectors on the Omega^1 blocks and constants on O."""
    amb = []
    for kind in B_blocks:
        amb += [0] * (5 if kind == "Omega1" else 1)
    ent = []
    for row in C_rows:
        r = []
        for kind, val in zip(B_blocks, row):
            if kind == "Omega1":
                r += [_const(c, p) for c in (val if val is not None else [0] * 5)]
            else:
                r.append(_const(val or 0, p))
        ent.append(r)
    return ModuleMap(amb, [0] * len(C_rows), ent, p, check=False)


def monad_B(seed, p=DEFAULT_PRIME):
    """0 -> 2 Omega^3(3) -> 2 Omega^1(1) + O -> I_S(4) -> 0 with a random
    map (entries in L^2 V and L^3 V)."""
    rng = make_rng(seed)
    A = direct_sum([omega_module(3, p)] * 2)
    B = direct_sum([omega_module(1, p)] * 2 + [omega_module(0, p)])
    alpha = []
    desc = {"A": "2 Omega^3(3)", "B": "2 Omega^1(1) + O", "entries": []}
    for l in range(2):
        a1, a2, eta = _rand_ext(2, rng, p), _rand_ext(2, rng, p), _rand_ext(3, rng, p)
        desc["entries"].append({"a1": _ser(a1), "a2": _ser(a2), "eta": _ser(eta)})
        alpha += _images_under(3, [(1, a1), (1, a2), (0, eta)], p)
    return MonadData(A, B, alpha, None, desc)


def _ser(om):
    return {"".join(map(str, k)): int(v) for k, v in sorted(om.items())}


def veronese_quadrics(kind, rng, p=DEFAULT_PRIME):
    """Five quadrics in x2, x3, x4 spanning the hyperplane of quadrics
    apolar to a dual conic: a smooth one ("elliptic") or a line pair
    ("k3").  Returns (quadrics, dual conic matrix)."""
    if kind == "elliptic":
        while True:
            L = rng.integers(0, p, size=(3, 3))
            Lam = (L + L.T) % p
            if la.rank(Lam, p) == 3:
                break
    elif kind == "k3":
        while True:
            u, v = rng.integers(0, p, size=3), rng.integers(0, p, size=3)
            Lam = (np.outer(u, v) + np.outer(v, u)) % p
            if la.rank(Lam, p) == 2:
                break
    else:
        raise MonadError(f"unknown quadric type {kind!r}")
    # the quadric sum c_ij x_i x_j (i <= j) pairs to sum c_ii L_ii + c_ij L_ij
    monos = [(a, b) for a in range(3) for b in range(a, 3)]
    func = np.array([Lam[a, b] for a, b in monos], dtype=np.int64).reshape(1, -1)
    K = la.kernel(func, p)
    qs = []
    for c in range(K.shape[1]):
        q = Polynomial._raw({}, p)
        for (a, b), coef in zip(monos, K[:, c]):
            if coef:
                q = q + (_var(a + 2, p) * _var(b + 2, p)).scale(int(coef))
        qs.append(q)
    return qs, Lam


def psi_bundle(kind, seed, p=DEFAULT_PRIME):
    """G = ker(5 O + 2 O(1) -> O(2)) with psi = (q1..q5, x0, x1)."""
    rng = make_rng(seed)
    qs, Lam = veronese_quadrics(kind, rng, p)
    G = kernel_bundle_G([_var(0, p), _var(1, p)], qs, p)
    return G, qs, Lam


def psi_source(p=DEFAULT_PRIME):
    """F = O(-1) + Omega^3(3)."""
    return direct_sum([line_bundle(-1, p), omega_module(3, p)])


def monad_psi(kind, seed, p=DEFAULT_PRIME):
    """0 -> O(-1) + Omega^3(3) -> G -> I_S(4) -> 0 for a random map, with
    G from an elliptic or K3 type psi."""
    G, qs, Lam = psi_bundle(kind, seed, p)
    F = psi_source(p)
    alpha = random_hom(F, G, seed + 1)
    desc = {"psi": kind, "dual_conic": Lam.tolist(), "quadrics": [str(q) for q in qs]}
    return MonadData(F, G, alpha, None, desc)


def monad_C_remark(seed, p=DEFAULT_PRIME):
    """G = O + ker(4 O + 2 O(1) -> O(2)) with generic psi, F = O(-1) +
    Omega^3(3)."""
    rng = make_rng(seed)
    from .ring import random_form
    qs = [random_form(2, rng, p) for _ in range(4)]
    ls = [random_form(1, rng, p) for _ in range(2)]
    G = kernel_bundle_G(ls, qs, p, extra_trivial=1)
    F = psi_source(p)
    alpha = random_hom(F, G, seed + 1)
    return MonadData(F, G, alpha, None, {"psi": "generic", "G": "O + ker(4O+2O(1)->O(2))"})


def three_point_linear_matrix(rng, p=DEFAULT_PRIME):
    """A 2 x 6 matrix of linear forms of rank <= 1 at three random
    non-collinear points (solved linearly by prescribing the ratio of the
    two rows at each point)."""
    while True:
        pts = rng.integers(0, p, size=(3, NVARS))
        if la.rank(pts, p) == 3:
            break
    lam = rng.integers(1, p, size=3)
    # unknowns: coefficient c[r, j, v] of x_v in entry (r, j); 60 of them
    rows = []
    for k in range(3):
        for j in range(6):
            row = np.zeros(60, np.int64)
            for v in range(NVARS):
                row[(1 * 6 + j) * 5 + v] = pts[k, v]
                row[(0 * 6 + j) * 5 + v] = (-lam[k] * pts[k, v]) % p
            rows.append(row)
    K = la.kernel(np.array(rows) % p, p)
    c = la.matmul(K, rng.integers(0, p, size=(K.shape[1], 1)), p)[:, 0]
    ent = [[Polynomial._raw({(tuple(1 if t == v else 0 for t in range(NVARS))): int(c[(r * 6 + j) * 5 + v])
                             for v in range(NVARS) if c[(r * 6 + j) * 5 + v]}, p)
            for j in range(6)] for r in range(2)]
    return ent, pts


def monad_F_remark(seed, p=DEFAULT_PRIME):
    """G = ker(O + 6 O(1) -> 2 O(2)) whose linear part drops rank at three
    points, F = 2 O(-1) + 2 O."""
    rng = make_rng(seed)
    from .ring import random_form
    lin, pts = three_point_linear_matrix(rng, p)
    quad = [random_form(2, rng, p) for _ in range(2)]
    psi = [[quad[r]] + lin[r] for r in range(2)]
    G = kernel_bundle_matrix(psi, [0] + [-1] * 6, [-2, -2], p)
    F = direct_sum([line_bundle(-1, p)] * 2 + [line_bundle(0, p)] * 2)
    alpha = random_hom(F, G, seed + 1)
    return MonadData(F, G, alpha, None, {"psi": "three-point", "points": pts.tolist()})
