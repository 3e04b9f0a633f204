"""Finite residue fields F_q as towers over F_p, with univariate factorization.

Elements of the prime field are ints mod p; elements of an extension step are
tuples of base elements.  Towers mirror the local-field towers exactly, so the
reduction maps stay coefficient-wise.
"""

from __future__ import annotations

import random


class PrimeResidueField:
    def __init__(self, p):
        self.p = p
        self.base = None
        self.degree = 1  # over the base (here: itself)
        self.size = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return list(range(self.p))

    def __repr__(self):
        return "F_%d" % self.p


class ExtResidueField:
    """F_{q^d} = base[y]/(modulus); modulus is monic, given without its leading 1."""

    def __init__(self, base, modulus):
        self.p = base.p
        self.base = base
        self.modulus = tuple(modulus)  # coefficients of y^0..y^{d-1}
        self.degree = len(modulus)
        self.size = base.size ** self.degree

    def zero(self):
        return tuple(self.base.zero() for _ in range(self.degree))

    def one(self):
        return tuple(
            self.base.one() if i == 0 else self.base.zero() for i in range(self.degree)
        )

    def from_int(self, n):
        out = [self.base.zero()] * self.degree
        out[0] = self.base.from_int(n)
        return tuple(out)

    def embed(self, a):
        """Base element -> element of this field."""
        out = [self.base.zero()] * self.degree
        out[0] = a
        return tuple(out)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        d = self.degree
        base = self.base
        prod = [base.zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b):
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        # fold y^k for k >= d using y^d = -modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if base.is_zero(c):
                continue
            prod[k] = base.zero()
            for j, m in enumerate(self.modulus):
                prod[k - d + j] = base.sub(prod[k - d + j], base.mul(c, m))
        return tuple(prod[:d])

    def pow(self, a, n):
        out = self.one()
        acc = a
        while n:
            if n & 1:
                out = self.mul(out, acc)
            acc = self.mul(acc, acc)
            n >>= 1
        return out

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0 in residue field")
        return self.pow(a, self.size - 2)

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    def elements(self):
        base_elems = self.base.elements()
        out = [()]
        for _ in range(self.degree):
            out = [t + (b,) for t in out for b in base_elems]
        return out

    def __repr__(self):
        return "F_%d^%d" % (self.base.size, self.degree)


# ---------------------------------------------------------------------------
# dense univariate polynomials over a residue field (lists, low-to-high)


def poly_trim(F, f):
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def poly_add(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero()
        b = g[i] if i < len(g) else F.zero()
        out.append(F.add(a, b))
    return poly_trim(F, out)


def poly_sub(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero()
        b = g[i] if i < len(g) else F.zero()
        out.append(F.sub(a, b))
    return poly_trim(F, out)


def poly_mul(F, f, g):
    if not f or not g:
        return []
    out = [F.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(F, out)


def poly_scale(F, f, c):
    return poly_trim(F, [F.mul(a, c) for a in f])


def poly_divmod(F, f, g):
    g = poly_trim(F, list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv_lead = F.inv(g[-1])
    q = [F.zero()] * max(0, len(f) - len(g) + 1)
    while len(poly_trim(F, f)) >= len(g):
        f = poly_trim(F, f)
        shift = len(f) - len(g)
        c = F.mul(f[-1], inv_lead)
        q[shift] = F.add(q[shift], c)
        for i, a in enumerate(g):
            f[shift + i] = F.sub(f[shift + i], F.mul(c, a))
    return poly_trim(F, q), poly_trim(F, f)


def poly_mod(F, f, g):
    return poly_divmod(F, f, g)[1]


def poly_gcd(F, f, g):
    f = poly_trim(F, list(f))
    g = poly_trim(F, list(g))
    while g:
        f, g = g, poly_mod(F, f, g)
    if f:
        f = poly_scale(F, f, F.inv(f[-1]))
    return f


def poly_ext_gcd(F, f, g):
    """Extended Euclid: returns (d, s, t) with s*f + t*g = d, d monic."""
    r0, r1 = poly_trim(F, list(f)), poly_trim(F, list(g))
    s0, s1 = [F.one()], []
    t0, t1 = [], [F.one()]
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return poly_scale(F, r0, c), poly_scale(F, s0, c), poly_scale(F, t0, c)


def poly_pow(F, f, n):
    out = [F.one()]
    acc = list(f)
    while n:
        if n & 1:
            out = poly_mul(F, out, acc)
        acc = poly_mul(F, acc, acc)
        n >>= 1
    return out


def poly_pow_mod(F, f, n, m):
    out = [F.one()]
    acc = poly_mod(F, f, m)
    while n:
        if n & 1:
            out = poly_mod(F, poly_mul(F, out, acc), m)
        acc = poly_mod(F, poly_mul(F, acc, acc), m)
        n >>= 1
    return out


def poly_deriv(F, f):
    out = []
    for i in range(1, len(f)):
        c = f[i]
        acc = F.zero()
        for _ in range(i):
            acc = F.add(acc, c)
        out.append(acc)
    return poly_trim(F, out)


def poly_monic(F, f):
    f = poly_trim(F, list(f))
    if not f:
        return f
    return poly_scale(F, f, F.inv(f[-1]))


def poly_eval(F, f, x):
    acc = F.zero()
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _pth_root(F, a):
    # x -> x^p is an automorphism; the inverse is x -> x^(q/p)
    q = F.size
    if isinstance(F, PrimeResidueField):
        return a
    return F.pow(a, q // F.p)


def squarefree_decomposition(F, f):
    """Return [(g_i, m_i)] with f = prod g_i^{m_i}, g_i squarefree pairwise coprime."""
    f = poly_monic(F, f)
    if len(f) <= 1:
        return []
    df = poly_deriv(F, f)
    if not df:
        # f = h(x^p): take p-th root coefficientwise
        h = [_pth_root(F, f[i]) for i in range(0, len(f), F.p)]
        return _merge_sqfree(F, [(g, F.p * m) for g, m in squarefree_decomposition(F, h)])
    out = []
    c = poly_gcd(F, f, df)
    w = poly_divmod(F, f, c)[0]
    m = 1
    while len(w) > 1:
        y = poly_gcd(F, w, c)
        z = poly_divmod(F, w, y)[0]
        if len(z) > 1:
            out.append((z, m))
        c = poly_divmod(F, c, y)[0]
        w = y
        m += 1
    # c is now the p-th power part
    if len(c) > 1:
        h = [_pth_root(F, c[i]) for i in range(0, len(c), F.p)]
        out.extend((g, F.p * m) for g, m in squarefree_decomposition(F, h))
    return _merge_sqfree(F, out)


def _merge_sqfree(F, parts):
    return [(poly_monic(F, g), m) for g, m in parts if len(g) > 1]


def distinct_degree(F, f):
    """f monic squarefree.  Return [(g, d)] with g the product of degree-d factors."""
    out = []
    x = [F.zero(), F.one()]
    h = list(x)
    d = 0
    f = poly_monic(F, f)
    while len(f) - 1 > 2 * d:
        d += 1
        h = poly_pow_mod(F, h, F.size, f)
        g = poly_gcd(F, poly_sub(F, h, x), f)
        if len(g) > 1:
            out.append((g, d))
            f = poly_divmod(F, f, g)[0]
            h = poly_mod(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _random_poly(F, deg, rng):
    elems = F.elements()
    return poly_trim(F, [rng.choice(elems) for _ in range(deg + 1)])


def equal_degree_split(F, f, d, rng):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = F.size
    while True:
        h = _random_poly(F, n - 1, rng)
        if len(h) <= 1:
            continue
        g = poly_gcd(F, h, f)
        if 1 < len(g) < len(f):
            pass
        elif q % 2 == 1:
            e = (q ** d - 1) // 2
            t = poly_pow_mod(F, h, e, f)
            g = poly_gcd(F, poly_sub(F, t, [F.one()]), f)
        else:
            # char 2: trace map sum h^(2^i)
            t = list(h)
            acc = list(h)
            k = d * (q.bit_length() - 1)  # d * log2(q)
            for _ in range(k - 1):
                acc = poly_pow_mod(F, acc, 2, f)
                t = poly_add(F, t, acc)
            g = poly_gcd(F, t, f)
        if 1 < len(g) < len(f):
            rest = poly_divmod(F, f, g)[0]
            return equal_degree_split(F, g, d, rng) + equal_degree_split(F, rest, d, rng)


def factor_poly(F, f, seed=0):
    """Full monic factorization over F: returns [(irreducible, multiplicity)]."""
    rng = random.Random(seed or 0xFACE)
    f = poly_monic(F, f)
    out = []
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree_split(F, h, d, rng):
                out.append((poly_monic(F, irr), m))
    out.sort(key=lambda t: (len(t[0]), repr(t[0])))
    return out


def poly_roots(F, f):
    """Roots in F with multiplicity."""
    out = []
    for irr, m in factor_poly(F, f):
        if len(irr) == 2:
            out.append((F.neg(irr[0]), m))
    return out


def is_irreducible(F, f):
    f = poly_monic(F, f)
    if len(f) <= 1:
        return False
    fac = factor_poly(F, f)
    return len(fac) == 1 and fac[0][1] == 1 and len(fac[0][0]) == len(f)
