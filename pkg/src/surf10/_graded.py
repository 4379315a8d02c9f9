"""Graded pieces as dense vectors.

A homogeneous form of degree d is a vector over the monomial basis of R_d
(decreasing grevlex).  A graded free module F = sum R(-a_j) has degree n
piece sum R_{n - a_j}; elements are concatenated blocks.  Maps act on
column vectors.
"""

from functools import lru_cache

import numpy as np

from . import _linalg as la
from .ring import Polynomial, dim_R, monomial_index, monomials_of_degree, NVARS


@lru_cache(maxsize=None)
def _exp_array(d):
    return np.array(monomials_of_degree(d), dtype=np.int64).reshape(-1, NVARS)


@lru_cache(maxsize=None)
def _code_index(d):
    # monomial code (base 64 digits) -> position, as a sorted lookup
    codes = _exp_array(d) @ (64 ** np.arange(NVARS, dtype=np.int64))
    order = np.argsort(codes)
    return codes[order], order


def _codes(E):
    return E @ (64 ** np.arange(NVARS, dtype=np.int64))


@lru_cache(maxsize=4096)
def shift_table(d, e):
    """Positions in R_{d+|e|} of m * x^e for the basis monomials m of R_d."""
    E = _exp_array(d) + np.array(e, dtype=np.int64)
    codes, order = _code_index(d + sum(e))
    pos = np.searchsorted(codes, _codes(E))
    return order[pos]


def poly_to_vec(f, d):
    v = np.zeros(dim_R(d), np.int64)
    if d < 0:
        return v
    idx = monomial_index(d)
    for m, c in f.terms.items():
        if sum(m) != d:
            raise ValueError("polynomial is not homogeneous of the expected degree")
        v[idx[m]] = c
    return v


def vec_to_poly(v, d, p):
    monos = monomials_of_degree(d)
    nz = np.nonzero(v)[0]
    return Polynomial._raw({monos[i]: int(v[i]) for i in nz}, p)


def mult_matrix(f, d, deg_f, p):
    """Matrix of multiplication by the form f (degree deg_f): R_d -> R_{d+deg_f}."""
    rows, cols = dim_R(d + deg_f), dim_R(d)
    M = np.zeros((rows, cols), np.int64)
    if cols == 0 or rows == 0:
        return M
    ar = np.arange(cols)
    for m, c in f.terms.items():
        M[shift_table(d, m), ar] += c
    return M % p


def map_matrix(entries, src, tgt, n, p):
    """Degree-n matrix of a map given by entries[i][j] (forms) from
    sum R(-src[j]) to sum R(-tgt[i])."""
    rdims = [dim_R(n - b) for b in tgt]
    cdims = [dim_R(n - a) for a in src]
    M = np.zeros((sum(rdims), sum(cdims)), np.int64)
    r0 = 0
    for i, b in enumerate(tgt):
        c0 = 0
        for j, a in enumerate(src):
            f = entries[i][j]
            if f.terms and rdims[i] and cdims[j]:
                ar = np.arange(cdims[j])
                blk = M[r0:r0 + rdims[i], c0:c0 + cdims[j]]
                for m, c in f.terms.items():
                    blk[shift_table(n - a, m), ar] += c
            c0 += cdims[j]
        r0 += rdims[i]
    return M % p


def module_vec(elems, twists, n):
    """Concatenate the components (forms) of a module element of degree n."""
    return np.concatenate([poly_to_vec(f, n - a) for f, a in zip(elems, twists)]) \
        if twists else np.zeros(0, np.int64)


def vec_to_module(v, twists, n, p):
    out = []
    k = 0
    for a in twists:
        dd = dim_R(n - a)
        out.append(vec_to_poly(v[k:k + dd], n - a, p) if dd else Polynomial._raw({}, p))
        k += dd
    return out


def module_dim(twists, n):
    return sum(dim_R(n - a) for a in twists)


def multiply_by_variables(V, twists, n):
    """Given columns V in degree n of sum R(-twists), return the columns
    x_i * v in degree n+1 for all i (5 * ncols columns)."""
    blocks_in = [dim_R(n - a) for a in twists]
    blocks_out = [dim_R(n + 1 - a) for a in twists]
    out = np.zeros((sum(blocks_out), 5 * V.shape[1]), np.int64)
    for i in range(NVARS):
        e = tuple(1 if k == i else 0 for k in range(NVARS))
        r_in = 0
        r_out = 0
        for a, bi, bo in zip(twists, blocks_in, blocks_out):
            if bi:
                tab = shift_table(n - a, e)
                out[r_out + tab, i * V.shape[1]:(i + 1) * V.shape[1]] = V[r_in:r_in + bi]
            r_in += bi
            r_out += bo
    return out


def span_in_degree(gens, n, p):
    """RREF row basis of the degree-n part of the ideal generated by the
    given homogeneous forms."""
    rows = []
    for g in gens:
        dg = g.degree()
        if dg < 0 or dg > n:
            continue
        rows.append(mult_matrix(g, n - dg, dg, p).T)
    if not rows:
        return np.zeros((0, dim_R(n)), np.int64), np.zeros(0, np.int64)
    return la.rref(np.vstack(rows), p)


def quotient_projection(E, piv, n):
    """For a subspace of R_n in RREF (rows E, pivots piv), return (P, free)
    where P maps R_n to coordinates on the non-pivot monomials `free`:
    P @ v gives the class of v modulo the subspace."""
    N = dim_R(n)
    free = np.setdiff1d(np.arange(N), piv)
    P = np.zeros((len(free), N), np.int64)
    P[np.arange(len(free)), free] = 1
    if len(piv):
        # a pivot monomial equals minus the free part of its row
        P[:, piv] = (-E[:, free].T)
    return P, free


def module_mult_matrix(r, twists, d, p):
    """Matrix of multiplication by the form r on sum R(-twists), from
    degree d to degree d + deg r."""
    dr = r.degree()
    blocks_in = [dim_R(d - t) for t in twists]
    blocks_out = [dim_R(d + dr - t) for t in twists]
    M = np.zeros((sum(blocks_out), sum(blocks_in)), np.int64)
    r0 = c0 = 0
    for t, bi, bo in zip(twists, blocks_in, blocks_out):
        if bi and bo:
            M[r0:r0 + bo, c0:c0 + bi] = mult_matrix(r, d - t, dr, p)
        r0 += bo
        c0 += bi
    return M


def subspace_projection(A, p, with_free=False):
    """Columns of A span a subspace U of k^N.  Returns P with P v the
    coordinates of the class of v in k^N / U (and, if asked, the free
    coordinates: P restricted to them is the identity)."""
    N = A.shape[0]
    if A.shape[1] == 0:
        P = np.eye(N, dtype=np.int64)
        return (P, np.arange(N)) if with_free else P
    E, piv = la.rref(A.T, p)
    free = np.setdiff1d(np.arange(N), piv)
    P = np.zeros((len(free), N), np.int64)
    P[np.arange(len(free)), free] = 1
    if len(piv):
        P[:, piv] = (-E[:, free].T) % p
    return (P, free) if with_free else P
