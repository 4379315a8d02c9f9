"""Independent reference computations used as test oracles.  Nothing here
calls into surf10 beyond reading Polynomial.terms."""

import itertools

import numpy as np


def monos(d, n=5):
    out = []
    for c in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    return out


def rank_mod_p(A, p):
    """Plain Gaussian elimination over F_p with numpy row operations."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r])) % p
        r += 1
    return r


def piece_dim(gens, n, p):
    """dim I_n as the rank of all products monomial * generator of degree n."""
    basis = {m: i for i, m in enumerate(monos(n))}
    rows = []
    for g in gens:
        d = sum(next(iter(g.terms)))
        if d > n:
            continue
        for m in monos(n - d):
            v = np.zeros(len(basis), np.int64)
            for t, c in g.terms.items():
                v[basis[tuple(a + b for a, b in zip(t, m))]] = c
            rows.append(v)
    if not rows:
        return 0
    return rank_mod_p(np.array(rows), p)


# --- a naive Buchberger over dict polynomials ---------------------------------


def _key(m):
    # grevlex: degree, then smaller exponent in the last variable wins
    return (sum(m),) + tuple(-e for e in reversed(m))


def _lm(f):
    return max(f, key=_key)


def _sub_scaled(f, g, c, shift, p):
    out = dict(f)
    for m, a in g.items():
        k = tuple(u + v for u, v in zip(m, shift))
        out[k] = (out.get(k, 0) - c * a) % p
        if out[k] == 0:
            del out[k]
    return out


def _reduce(f, G, p):
    f = dict(f)
    rem = {}
    while f:
        m = _lm(f)
        for g in G:
            lg = _lm(g)
            if all(a >= b for a, b in zip(m, lg)):
                c = f[m] * pow(g[lg], -1, p) % p
                f = _sub_scaled(f, g, c, tuple(a - b for a, b in zip(m, lg)), p)
                break
        else:
            rem[m] = f.pop(m)
    return rem


def _monic(f, p):
    c = pow(f[_lm(f)], -1, p)
    return {m: a * c % p for m, a in f.items()}


def naive_groebner(polys, p):
    """Reduced Groebner basis by exhausting all S-pairs, no criteria."""
    G = [_monic(dict(f.terms), p) for f in polys if f.terms]
    pairs = list(itertools.combinations(range(len(G)), 2))
    while pairs:
        i, j = pairs.pop()
        f, g = G[i], G[j]
        lf, lg = _lm(f), _lm(g)
        l = tuple(max(a, b) for a, b in zip(lf, lg))
        s = _sub_scaled({}, f, -1, tuple(a - b for a, b in zip(l, lf)), p)
        s = _sub_scaled(s, g, 1, tuple(a - b for a, b in zip(l, lg)), p)
        h = _reduce(s, G, p)
        if h:
            G.append(_monic(h, p))
            pairs += [(k, len(G) - 1) for k in range(len(G) - 1)]
    # minimalize and reduce
    G = [g for k, g in enumerate(G)
         if not any(all(a >= b for a, b in zip(_lm(g), _lm(h))) and (_lm(g) != _lm(h) or m < k)
                    for m, h in enumerate(G) if m != k)]
    out = []
    for k, g in enumerate(G):
        others = G[:k] + G[k + 1:]
        lg = _lm(g)
        tail = {m: c for m, c in g.items() if m != lg}
        r = _reduce(tail, others, p)
        r[lg] = 1
        out.append(r)
    return sorted(out, key=lambda f: _key(_lm(f)))
