"""Homogeneous ideals, Groebner bases (grevlex) and graded dimensions."""

import numpy as np

from . import _linalg as la
from ._graded import span_in_degree
from .ring import (
    DEFAULT_PRIME, NVARS, ParseError, Polynomial, RingError, dim_R, divides,
    format_polynomial, grevlex_key, mono_div, mono_lcm, monomials_of_degree,
    monomial_index, parse_polynomial,
)


class IdealError(ValueError):
    pass


class Ideal:
    """A homogeneous ideal given by generators.  The Groebner basis is
    computed on demand and cached."""

    def __init__(self, gens, p=DEFAULT_PRIME, comments=None):
        gens = [g for g in gens if not g.is_zero()]
        for g in gens:
            if g.p != p:
                raise RingError("generator over a different field")
            if not g.is_homogeneous():
                raise IdealError(f"generator is not homogeneous: {g}")
        self.gens = gens
        self.p = p
        self.comments = list(comments or [])
        self._gb = None

    def __repr__(self):
        return f"Ideal({[format_polynomial(g) for g in self.gens]})"

    def __len__(self):
        return len(self.gens)

    def gb(self):
        if self._gb is None:
            self._gb = buchberger(self.gens, p=self.p)
        return self._gb

    def is_zero(self):
        return not self.gens

    def degrees(self):
        return sorted(g.degree() for g in self.gens)

    @classmethod
    def from_strings(cls, lines, p=DEFAULT_PRIME):
        return cls([parse_polynomial(s, p) for s in lines], p)


# --- Buchberger ---------------------------------------------------------


def _monic(f):
    return f.monic()


def _spoly(f, g, lf, lg):
    l = mono_lcm(lf, lg)
    # both monic
    return f.mul_term(1, mono_div(l, lf)) - g.mul_term(1, mono_div(l, lg))


class _Divisors:
    """Lookup of a basis element whose leading monomial divides a given
    monomial, memoized per monomial."""

    def __init__(self, basis, leads):
        self.basis = basis
        self.leads = leads
        self.memo = {}

    def find(self, m):
        try:
            return self.memo[m]
        except KeyError:
            pass
        hit = None
        for k, lg in enumerate(self.leads):
            if lg[0] <= m[0] and lg[1] <= m[1] and lg[2] <= m[2] and lg[3] <= m[3] and lg[4] <= m[4]:
                hit = k
                break
        self.memo[m] = hit
        return hit


def _reduce(f, basis, leads, full=True, divs=None):
    """Normal form of f modulo polynomials with the given leading monomials
    (all monic).  With full=False only the leading term is reduced."""
    p = f.p
    if divs is None:
        divs = _Divisors(basis, leads)
    r = dict(f.terms)
    rem = {}
    while r:
        m = max(r, key=grevlex_key)
        c = r[m]
        k = divs.find(m)
        if k is not None:
            q = mono_div(m, leads[k])
            for mg, cg in basis[k].terms.items():
                mm = (mg[0] + q[0], mg[1] + q[1], mg[2] + q[2], mg[3] + q[3], mg[4] + q[4])
                v = (r.get(mm, 0) - c * cg) % p
                if v:
                    r[mm] = v
                else:
                    r.pop(mm, None)
        else:
            if not full:
                rem.update(r)
                break
            rem[m] = c
            del r[m]
    return Polynomial._raw(rem, p)


def normal_form(f, gb):
    """Normal form of f modulo a Groebner basis (list of polynomials)."""
    basis = [g.monic() for g in gb]
    return _reduce(f, basis, [g.lm() for g in basis])


class _PairQueue:
    """Critical pairs with the Gebauer-Moeller update (Buchberger's first
    and second criteria).  Pairs are ordered by the degree and then grevlex
    rank of their lcm, ties broken by basis index."""

    def __init__(self):
        self.pairs = []   # (lcm, i, j)

    def update(self, leads, active, k):
        """Gebauer-Moeller update for the new basis element k."""
        lk = leads[k]
        C = [(mono_lcm(leads[i], lk), i) for i in active]
        D = []
        while C:
            l1, i = C.pop(0)
            if _coprime(leads[i], lk) or (
                    not any(divides(l2, l1) for l2, _ in C)
                    and not any(divides(l2, l1) for l2, _ in D)):
                D.append((l1, i))
        E = [(l, i, k) for l, i in D if not _coprime(leads[i], lk)]
        self.pairs = [
            (l, i, j) for (l, i, j) in self.pairs
            if not (divides(lk, l) and mono_lcm(leads[i], lk) != l and mono_lcm(leads[j], lk) != l)
        ]
        self.pairs.extend(E)
        self.pairs.sort(key=lambda t: (sum(t[0]), tuple(-x for x in grevlex_key(t[0])), t[1], t[2]))

    def pop_degree(self, d):
        out = [t for t in self.pairs if sum(t[0]) == d]
        self.pairs = [t for t in self.pairs if sum(t[0]) != d]
        return out

    def min_degree(self):
        return min((sum(t[0]) for t in self.pairs), default=None)


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger(gens, p=None, max_degree=None, method="auto"):
    """Reduced Groebner basis of the homogeneous ideal generated by gens.

    The algorithm is Buchberger's with the normal selection strategy and
    the Gebauer-Moeller criteria; pairs are processed degree by degree.
    method="sequential" reduces one S-polynomial at a time; "matrix"
    reduces all pairs of one degree together by a Macaulay-style row
    reduction.  With max_degree set, only pairs and generators up to that
    degree are used, so the result is a Groebner basis up to that degree.
    """
    gens = [g for g in gens if not g.is_zero()]
    if p is None:
        p = gens[0].p if gens else DEFAULT_PRIME
    if not gens:
        return []
    for g in gens:
        if not g.is_homogeneous():
            raise IdealError("buchberger needs homogeneous generators")
    if method == "auto":
        method = "matrix" if (len(gens) > 6 or max(g.degree() for g in gens) > 3) else "sequential"
    pending = sorted(enumerate(gens), key=lambda t: (t[1].degree(), t[0]))
    basis, leads = [], []
    active = []
    queue = _PairQueue()

    def add(h):
        h = h.monic()
        lh = h.lm()
        k = len(basis)
        basis.append(h)
        leads.append(lh)
        queue.update(leads, active, k)
        # drop elements whose lead is a multiple of the new lead
        active[:] = [i for i in active if not divides(lh, leads[i])]
        active.append(k)

    cache = {}

    def memo(act, al):
        key = tuple(al)
        if cache.get("key") != key:
            cache["key"] = key
            cache["divs"] = _Divisors(act, al)
        return cache["divs"]

    while pending or queue.pairs:
        dp = queue.min_degree()
        dg = pending[0][1].degree() if pending else None
        d = min(x for x in (dp, dg) if x is not None)
        if max_degree is not None and d > max_degree:
            break
        new_inputs = []
        while pending and pending[0][1].degree() == d:
            new_inputs.append(pending.pop(0)[1])
        pairs = queue.pop_degree(d)
        if method == "sequential":
            todo = [_spoly(basis[i], basis[j], leads[i], leads[j]) for _, i, j in pairs] + new_inputs
            for f in todo:
                act = [basis[i] for i in active]
                al = [leads[i] for i in active]
                h = _reduce(f, act, al, divs=_Divisors(act, al) if len(todo) < 2 else memo(act, al))
                if not h.is_zero():
                    add(h)
        else:
            for h in _matrix_step(basis, leads, active, pairs, new_inputs, d, p):
                add(h)
    return _interreduce([basis[i] for i in active])


def _matrix_step(basis, leads, active, pairs, inputs, d, p):
    rows = []
    for _, i, j in pairs:
        l = mono_lcm(leads[i], leads[j])
        rows.append(basis[i].mul_term(1, mono_div(l, leads[i])))
        rows.append(basis[j].mul_term(1, mono_div(l, leads[j])))
    rows.extend(inputs)
    if not rows:
        return []
    act = [(basis[i], leads[i]) for i in active]
    monos = set()
    for r in rows:
        monos.update(r.terms)
    reducers = []
    done = set()
    todo = list(monos)
    lead_set = set()
    while todo:
        m = todo.pop()
        if m in done:
            continue
        done.add(m)
        for g, lg in act:
            if divides(lg, m):
                r = g.mul_term(1, mono_div(m, lg))
                reducers.append(r)
                lead_set.add(m)
                for mm in r.terms:
                    if mm not in done:
                        todo.append(mm)
                break
    cols = sorted(done, key=grevlex_key, reverse=True)
    cidx = {m: k for k, m in enumerate(cols)}
    allrows = reducers + rows
    M = np.zeros((len(allrows), len(cols)), np.int64)
    for k, r in enumerate(allrows):
        for m, c in r.terms.items():
            M[k, cidx[m]] = c
    R, piv = la.rref(M, p)
    out = []
    for k, c in enumerate(piv):
        if cols[c] not in lead_set:
            nz = np.nonzero(R[k])[0]
            out.append(Polynomial._raw({cols[t]: int(R[k, t]) for t in nz}, p))
    out.sort(key=lambda f: grevlex_key(f.lm()))
    return out


def _interreduce(G):
    """Minimal reduced basis.  Input elements are homogeneous and each is
    already reduced modulo the elements of lower degree, so only leads of
    the same degree can still occur in tails."""
    G = [g.monic() for g in G]
    G.sort(key=lambda g: grevlex_key(g.lm()))
    leads = [g.lm() for g in G]
    keep = []
    for i in range(len(G)):
        if any(divides(leads[j], leads[i]) for j in keep):
            continue
        keep.append(i)
    G = [G[i] for i in keep]
    leads = [leads[i] for i in keep]
    bydeg = {}
    for g, l in zip(G, leads):
        bydeg.setdefault(sum(l), []).append((g, l))
    out = []
    for d, items in bydeg.items():
        basis = [g for g, _ in items]
        ls = [l for _, l in items]
        divs = _Divisors(basis, ls)
        for i, (g, l) in enumerate(items):
            if any(k != i and m in g.terms for k, m in enumerate(ls)):
                others = [basis[k] for k in range(len(basis)) if k != i]
                ol = [ls[k] for k in range(len(basis)) if k != i]
                tail = Polynomial._raw({m: c for m, c in g.terms.items() if m != l}, g.p)
                t = _reduce(tail, others, ol)
                t.terms[l] = 1
                g = t
            out.append(g)
    out.sort(key=lambda g: (g.degree(), tuple(-x for x in grevlex_key(g.lm()))))
    return out


def buchberger_up_to(gens, d, p=None):
    """Groebner basis correct in all degrees <= d."""
    return buchberger(gens, p=p, max_degree=d)


def is_groebner_basis(G):
    """Buchberger criterion: all S-polynomials reduce to zero."""
    G = [g.monic() for g in G if not g.is_zero()]
    leads = [g.lm() for g in G]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if _coprime(leads[i], leads[j]):
                continue
            s = _spoly(G[i], G[j], leads[i], leads[j])
            if not _reduce(s, G, leads).is_zero():
                return False
    return True


def ideal_contains(I, f):
    """Membership test via the normal form."""
    if f.is_zero():
        return True
    return normal_form(f, I.gb()).is_zero()


def leading_monomials(I):
    return [g.lm() for g in I.gb()]


# --- Hilbert series of monomial ideals -----------------------------------


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _minimalize_monos(ms):
    ms = sorted(set(ms), key=sum)
    out = []
    for m in ms:
        if not any(divides(o, m) for o in out):
            out.append(m)
    return out


def _numerator(ms):
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^5 of R/(ms), as a
    list of integer coefficients."""
    ms = _minimalize_monos(ms)
    if not ms:
        return [1]
    if len(ms) == 1:
        d = sum(ms[0])
        return [1] + [0] * (d - 1) + [-1] if d > 0 else [0]
    # all generators pure powers of distinct variables -> product formula
    if all(sum(1 for e in m if e) == 1 for m in ms):
        out = [1]
        for m in ms:
            d = sum(m)
            nxt = [0] * (len(out) + d)
            for i, c in enumerate(out):
                nxt[i] += c
                nxt[i + d] -= c
            out = nxt
        return out
    # pivot on the last generator: N(M) = N(M') - t^deg(m) N(M' : m)
    m = ms[-1]
    rest = ms[:-1]
    colon = [mono_div(mono_lcm(a, m), m) for a in rest]
    a = _numerator(rest)
    b = _numerator(colon)
    d = sum(m)
    return _poly_sub(a, [0] * d + b)


def hilbert_numerator(monos):
    out = _numerator(list(monos))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _hf_from_numerator(num, n):
    s = 0
    for k, c in enumerate(num):
        s += c * dim_R(n - k)
    return s


def graded_piece_dim(I, n, kind="ideal"):
    """dim I_n (kind='ideal') or dim (R/I)_n (kind='quotient'), counted
    from the standard monomials of the Groebner basis."""
    if kind not in ("ideal", "quotient"):
        raise ValueError("kind must be 'ideal' or 'quotient'")
    if n < 0:
        return 0
    num = hilbert_numerator(leading_monomials(I)) if not I.is_zero() else [1]
    q = _hf_from_numerator(num, n)
    return q if kind == "quotient" else dim_R(n) - q


def macaulay_dim(gens, n, p=DEFAULT_PRIME):
    """dim I_n as the rank of the matrix of all multiples x^a g of degree n.
    Independent of any Groebner basis."""
    return len(span_in_degree(gens, n, p)[1])


def standard_monomials(I, n):
    leads = leading_monomials(I)
    return [m for m in monomials_of_degree(n) if not any(divides(l, m) for l in leads)]


# --- .ideal files --------------------------------------------------------


def format_ideal(I):
    lines = [f"ring p={I.p} vars=x0..x4 order=grevlex"]
    for c in I.comments:
        lines.append("# " + c if c else "#")
    for g in I.gens:
        lines.append(format_polynomial(g))
    return "\n".join(lines) + "\n"


def parse_ideal(text):
    lines = text.splitlines()
    body = [ln for ln in lines]
    if not body or not body[0].startswith("ring "):
        raise ParseError("missing ring header")
    header = body[0].split()
    fields = dict(kv.split("=", 1) for kv in header[1:] if "=" in kv)
    try:
        p = int(fields["p"])
    except (KeyError, ValueError):
        raise ParseError("ring header needs p=<prime>")
    if fields.get("vars", "x0..x4") != "x0..x4":
        raise ParseError("only vars=x0..x4 is supported")
    if fields.get("order", "grevlex") != "grevlex":
        raise ParseError("only order=grevlex is supported")
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ParseError(f"p={p} is not prime")
    gens, comments = [], []
    for ln in body[1:]:
        s = ln.strip()
        if not s:
            continue
        if s.startswith("#"):
            comments.append(s[1:].strip())
            continue
        gens.append(parse_polynomial(s, p))
    try:
        return Ideal(gens, p, comments)
    except IdealError as e:
        raise ParseError(str(e))


def read_ideal(path):
    with open(path) as fh:
        return parse_ideal(fh.read())


def write_ideal(I, path):
    with open(path, "w") as fh:
        fh.write(format_ideal(I))
