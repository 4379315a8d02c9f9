"""Dense linear algebra over F_p.

All matrices are int64 numpy arrays with entries in [0, p).  The kernels
are compiled with numba; p must be below 2**31 so that products fit.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _inv(a, p):
    # extended Euclid, a != 0 mod p
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _rref_inplace(A, p, full):
    m, n = A.shape
    piv = np.empty(min(m, n), np.int64)
    nz = np.empty(n, np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if A[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, n):
                t = A[r, j]
                A[r, j] = A[k, j]
                A[k, j] = t
        inv = _inv(A[r, c], p)
        cnt = 0
        for j in range(c, n):
            v = A[r, j]
            if v != 0:
                A[r, j] = v * inv % p
                nz[cnt] = j
                cnt += 1
        start = 0 if full else r + 1
        for i in range(start, m):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            for t in range(cnt):
                j = nz[t]
                A[i, j] = (A[i, j] - f * A[r, j]) % p
        piv[r] = c
        r += 1
    return r, piv[:r]


def rref(A, p, full=True):
    """Row-reduce a copy of A.  Returns (R, pivot_columns).

    With full=False only forward elimination is done (row echelon form).
    """
    R = np.ascontiguousarray(A, dtype=np.int64) % p
    if R.size == 0:
        return R, np.zeros(0, np.int64)
    r, piv = _rref_inplace(R, p, full)
    return R[:r].copy(), piv.copy()


def rank(A, p):
    A = np.asarray(A)
    if A.size == 0:
        return 0
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(A, p, full=False)[1])


def kernel(A, p):
    """Basis of the right kernel {v : A v = 0}, as the columns of a matrix."""
    A = np.asarray(A, dtype=np.int64)
    m, n = A.shape
    if m == 0 or n == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, p)
    free = np.setdiff1d(np.arange(n), piv)
    K = np.zeros((n, len(free)), np.int64)
    if len(free):
        K[free, np.arange(len(free))] = 1
        K[piv, :] = (-R[:, free]) % p
    return K


def row_space(A, p):
    """Reduced row echelon basis of the row space (rows)."""
    return rref(A, p)[0]


def solve(A, b, p):
    """One solution x of A x = b, or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    m, n = A.shape
    R, piv = rref(np.hstack([A, b]), p)
    if len(piv) and piv[-1] == n:
        return None
    x = np.zeros(n, np.int64)
    x[piv] = R[:, n]
    return x


def reduce_rows(B, E, piv, p):
    """Reduce the rows of B modulo the RREF basis E with pivot columns piv."""
    B = np.array(B, dtype=np.int64) % p
    if len(piv) == 0 or B.size == 0:
        return B
    C = B[:, piv].copy()
    # B - C E, done blockwise to keep int64 products small
    out = B.copy()
    for k in range(0, E.shape[0], 2048):
        blk = E[k:k + 2048]
        out = (out - _mulmod(C[:, k:k + 2048], blk, p)) % p
    return out


def _mulmod(X, Y, p):
    """X @ Y mod p.  Uses float64 BLAS while the products stay exact."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    if X.shape[1] == 0:
        return np.zeros((X.shape[0], Y.shape[1]), np.int64)
    step = max(1, (2 ** 52) // (p * p))
    out = np.zeros((X.shape[0], Y.shape[1]), np.int64)
    Xf = X.astype(np.float64)
    Yf = Y.astype(np.float64)
    for k in range(0, X.shape[1], step):
        out = (out + np.fmod(Xf[:, k:k + step] @ Yf[k:k + step], p).astype(np.int64)) % p
    return out


def matmul(X, Y, p):
    return _mulmod(X, Y, p)


def independent_extension(base, cand, p):
    """Indices of rows of cand that extend the row span of base, greedily
    in the given order."""
    cand = np.asarray(cand, dtype=np.int64)
    base = np.asarray(base, dtype=np.int64).reshape(-1, cand.shape[1])
    if cand.shape[0] == 0:
        return []
    M = np.vstack([base, cand]).T
    _, piv = rref(M, p, full=False)
    nb = base.shape[0]
    return [int(c) - nb for c in piv if c >= nb]
