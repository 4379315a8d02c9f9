"""Polynomials over F_p in the variables x0..x4 with the grevlex order.

Monomials are exponent tuples (e0, ..., e4).  A Polynomial stores a dict
monomial -> coefficient in [1, p).  The monomial order is degree reverse
lexicographic with x0 > x1 > ... > x4.
"""

import re
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

DEFAULT_PRIME = 31991
NVARS = 5
VARS = tuple(f"x{i}" for i in range(NVARS))


class RingError(ValueError):
    pass


class ParseError(RingError):
    pass


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


class PrimeField:
    """The field F_p; elements are ints in [0, p)."""

    def __init__(self, p=DEFAULT_PRIME):
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        self.p = p

    def __call__(self, a):
        return a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)


def grevlex_key(m):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(m), -m[4], -m[3], -m[2], -m[1])


def compare_monomials(a, b):
    """-1, 0 or 1 as a <, =, > b in grevlex."""
    ka, kb = grevlex_key(a), grevlex_key(b)
    return (ka > kb) - (ka < kb)


def divides(a, b):
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2] and a[3] <= b[3] and a[4] <= b[4]


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials_of_degree(d):
    """All monomials of degree d, in decreasing grevlex order."""
    if d < 0:
        return ()
    out = []
    for c in combinations_with_replacement(range(NVARS), d):
        e = [0] * NVARS
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(d):
    return {m: i for i, m in enumerate(monomials_of_degree(d))}


def dim_R(d):
    """dim R_d = C(d+4, 4) for d >= 0, else 0."""
    if d < 0:
        return 0
    return (d + 1) * (d + 2) * (d + 3) * (d + 4) // 24


def unit(i):
    e = [0] * NVARS
    e[i] = 1
    return tuple(e)


ZERO_MONO = (0,) * NVARS


class Polynomial:
    """Sparse polynomial over F_p."""

    __slots__ = ("terms", "p")

    def __init__(self, terms=None, p=DEFAULT_PRIME):
        self.p = p
        if terms is None:
            self.terms = {}
        elif isinstance(terms, dict):
            self.terms = {m: c % p for m, c in terms.items() if c % p}
        else:
            d = {}
            for c, m in terms:
                m = tuple(m)
                d[m] = (d.get(m, 0) + c) % p
            self.terms = {m: c for m, c in d.items() if c}

    @classmethod
    def _raw(cls, terms, p):
        f = cls.__new__(cls)
        f.terms = terms
        f.p = p
        return f

    @classmethod
    def constant(cls, c, p=DEFAULT_PRIME):
        return cls({ZERO_MONO: c}, p)

    @classmethod
    def var(cls, i, p=DEFAULT_PRIME):
        return cls({unit(i): 1}, p)

    @classmethod
    def monomial(cls, m, c=1, p=DEFAULT_PRIME):
        return cls({tuple(m): c}, p)

    # basic queries
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        """List of (coefficient, monomial), strictly descending."""
        return [(self.terms[m], m) for m in sorted(self.terms, key=grevlex_key, reverse=True)]

    def lm(self):
        if not self.terms:
            raise RingError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def lc(self):
        return self.terms[self.lm()]

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        """True iff all terms share one degree.  The zero polynomial counts
        as homogeneous (of every degree)."""
        if not self.terms:
            return True
        it = iter(self.terms)
        d = sum(next(it))
        return all(sum(m) == d for m in it)

    def homogeneous_components(self):
        comps = {}
        for m, c in self.terms.items():
            comps.setdefault(sum(m), {})[m] = c
        return {d: Polynomial._raw(t, self.p) for d, t in sorted(comps.items())}

    # arithmetic
    def _check(self, other):
        if isinstance(other, int):
            return Polynomial.constant(other, self.p)
        if other.p != self.p:
            raise RingError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        p = self.p
        for m, c in other.terms.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial._raw(t, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Polynomial._raw({m: p - c for m, c in self.terms.items()}, p)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c %= self.p
        if c == 0:
            return Polynomial._raw({}, self.p)
        p = self.p
        return Polynomial._raw({m: v * c % p for m, v in self.terms.items()}, p)

    def mul_term(self, c, mono):
        c %= self.p
        if c == 0:
            return Polynomial._raw({}, self.p)
        p = self.p
        return Polynomial._raw(
            {tuple(a + b for a, b in zip(m, mono)): v * c % p for m, v in self.terms.items()}, p)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        return poly_product(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Polynomial.constant(1, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other, self.p)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def monic(self):
        if not self.terms:
            return self
        return self.scale(pow(self.lc(), self.p - 2, self.p))

    def diff(self, i):
        """Partial derivative with respect to x_i."""
        p = self.p
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                v = c * m[i] % p
                if v:
                    mm = list(m)
                    mm[i] -= 1
                    t[tuple(mm)] = v
        return Polynomial._raw(t, p)

    def evaluate(self, point):
        p = self.p
        s = 0
        for m, c in self.terms.items():
            v = c
            for a, e in zip(point, m):
                if e:
                    v = v * pow(a, e, p) % p
            s += v
        return s % p

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# packed exponent arithmetic for fast products: 8 bits per variable
_SHIFTS = np.array([8 * i for i in range(NVARS)], dtype=np.int64)


def _pack(monos):
    e = np.array(monos, dtype=np.int64).reshape(-1, NVARS)
    return (e << _SHIFTS).sum(axis=1)


def _unpack(codes):
    return [tuple(int((c >> (8 * i)) & 255) for i in range(NVARS)) for c in codes]


def poly_product(f, g):
    """Product of two polynomials."""
    p = f.p
    if not f.terms or not g.terms:
        return Polynomial._raw({}, p)
    if len(f.terms) * len(g.terms) < 400:
        t = {}
        for m1, c1 in f.terms.items():
            for m2, c2 in g.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3], m1[4] + m2[4])
                t[m] = (t.get(m, 0) + c1 * c2) % p
        return Polynomial._raw({m: c for m, c in t.items() if c}, p)
    m1 = list(f.terms)
    m2 = list(g.terms)
    if max(max(m) for m in m1) + max(max(m) for m in m2) > 255:
        raise RingError("exponent too large")
    a = _pack(m1)
    b = _pack(m2)
    ca = np.array([f.terms[m] for m in m1], dtype=np.int64)
    cb = np.array([g.terms[m] for m in m2], dtype=np.int64)
    codes = (a[:, None] + b[None, :]).ravel()
    coef = ((ca[:, None] * cb[None, :]) % p).ravel()
    uniq, inv = np.unique(codes, return_inverse=True)
    # sums of up to len*len values < p each; well inside int64
    acc = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(acc, inv, coef)
    acc %= p
    keep = np.nonzero(acc)[0]
    monos = _unpack(uniq[keep])
    return Polynomial._raw(dict(zip(monos, acc[keep].tolist())), p)


def is_homogeneous(f):
    """(homogeneous?, degree).  The zero polynomial is homogeneous with
    degree None."""
    if f.is_zero():
        return True, None
    ok = f.is_homogeneous()
    return ok, (f.degree() if ok else None)


# parsing and printing

_FACTOR_RE = re.compile(r"(\d+)|x(\d)(?:\^(\d+))?|\*")


def parse_polynomial(text, p=DEFAULT_PRIME):
    """Parse text such as '3*x0^2*x1 - x2x3 + 5'."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    if s == "0":
        return Polynomial({}, p)
    terms = {}
    s = s.replace(" ", "").replace("\t", "")
    if not s:
        raise ParseError("empty polynomial")
    # split into signed terms
    chunks = re.findall(r"[+-]?[^+-]+", s)
    if "".join(chunks) != s:
        raise ParseError(f"cannot parse {text!r}")
    for ch in chunks:
        sign = 1
        if ch[0] in "+-":
            sign = -1 if ch[0] == "-" else 1
            ch = ch[1:]
        if not ch:
            raise ParseError(f"dangling sign in {text!r}")
        coef = 1
        exps = [0] * NVARS
        i = 0
        seen_factor = False
        expect_factor = True
        while i < len(ch):
            m = _FACTOR_RE.match(ch, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character {ch[i]!r} in {text!r}")
            if m.group(0) == "*":
                if expect_factor:
                    raise ParseError(f"misplaced '*' in {text!r}")
                expect_factor = True
            elif m.group(1) is not None:
                coef *= int(m.group(1))
                seen_factor = True
                expect_factor = False
            else:
                v = int(m.group(2))
                if v >= NVARS:
                    raise ParseError(f"unknown variable x{v}")
                exps[v] += int(m.group(3)) if m.group(3) is not None else 1
                seen_factor = True
                expect_factor = False
            i = m.end()
        if not seen_factor or expect_factor:
            raise ParseError(f"incomplete term in {text!r}")
        key = tuple(exps)
        terms[key] = (terms.get(key, 0) + sign * coef) % p
    return Polynomial({m: c for m, c in terms.items() if c}, p)


def _format_mono(m):
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_polynomial(f):
    """Canonical text form: descending terms, coefficients in the symmetric
    range (-p/2, p/2], '*' between factors."""
    if not f.terms:
        return "0"
    p = f.p
    out = []
    for c, m in f.sorted_terms():
        if c > p // 2:
            c -= p
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_mono(m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


# random elements

def make_rng(seed):
    """Deterministic generator (numpy PCG64) for a given integer seed."""
    return np.random.Generator(np.random.PCG64(seed))


def random_form(d, rng, p=DEFAULT_PRIME, variables=None):
    """Random homogeneous form of degree d, optionally in a subset of the
    variables."""
    monos = monomials_of_degree(d)
    if variables is not None:
        allowed = set(variables)
        monos = [m for m in monos if all(e == 0 or i in allowed for i, e in enumerate(m))]
    coeffs = rng.integers(0, p, len(monos))
    return Polynomial({m: int(c) for m, c in zip(monos, coeffs) if c}, p)


def linear_form(coeffs, p=DEFAULT_PRIME):
    return Polynomial({unit(i): int(c) for i, c in enumerate(coeffs)}, p)


def variables(p=DEFAULT_PRIME):
    return [Polynomial.var(i, p) for i in range(NVARS)]
