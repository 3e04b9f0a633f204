"""Dense univariate polynomials over a local field (lists, low-to-high)."""

from __future__ import annotations

from ..errors import PrecisionExhausted


def trim(f):
    while f and f[-1].is_exact_zero():
        f.pop()
    return f


def pzero(K):
    return []


def pconst(K, c):
    c = K.coerce(c)
    return [] if c.is_exact_zero() else [c]


def pcoerce(K, f):
    return trim([K.coerce(c) for c in f])


def padd(K, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else K.zero()
        b = g[i] if i < len(g) else K.zero()
        out.append(a + b)
    return trim(out)


def pneg(K, f):
    return [-c for c in f]


def psub(K, f, g):
    return padd(K, f, pneg(K, g))


def pmul(K, f, g):
    if not f or not g:
        return []
    out = [K.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a.is_exact_zero():
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def pscale(K, f, c):
    c = K.coerce(c)
    return trim([a * c for a in f])


def pdeg(f):
    return len(f) - 1


def peval(K, f, x):
    acc = K.zero()
    for c in reversed(f):
        acc = acc * x + c
    return acc


def pderiv(K, f):
    return trim([f[i] * i for i in range(1, len(f))])


def pmonic(K, f):
    f = trim(list(f))
    if not f:
        return f
    lead = f[-1]
    if not lead.known_nonzero():
        raise PrecisionExhausted("leading coefficient indistinguishable from zero")
    inv = lead.inv()
    return [c * inv for c in f]


def pdivmod(K, f, g):
    """Division with remainder; g must have a known-nonzero leading coefficient."""
    g = trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not g[-1].known_nonzero():
        raise PrecisionExhausted("division by polynomial with unknown leading coefficient")
    inv = g[-1].inv()
    f = list(f)
    if len(f) < len(g):
        return [], trim(f)
    q = [K.zero()] * (len(f) - len(g) + 1)
    for shift in range(len(f) - len(g), -1, -1):
        c = f[shift + len(g) - 1] * inv
        q[shift] = c
        if c.is_exact_zero():
            continue
        for i, a in enumerate(g):
            f[shift + i] = f[shift + i] - c * a
    return trim(q), trim(f[: len(g) - 1])


def pgcd_monic(K, f, g):
    """Euclidean gcd with zero-at-precision decisions; result monic (or [])."""
    f = trim(list(f))
    g = trim(list(g))
    while True:
        g = [c for c in g]
        while g and g[-1].is_zeroish():
            g.pop()
        if not g:
            break
        _, r = pdivmod(K, f, g)
        f, g = g, r
    return pmonic(K, f) if f else []


def pshift_var(K, f, a):
    """f(x + a) by Horner on the shifted variable."""
    out = []
    for c in reversed(f):
        # out = out*(x+a) + c
        new = [K.zero()] * (len(out) + 1)
        for i, q in enumerate(out):
            new[i + 1] = new[i + 1] + q
            new[i] = new[i] + q * a
        if new:
            new[0] = new[0] + c
        else:
            new = [c]
        out = new
    return trim(out)


def pscale_var(K, f, s):
    """f(s*x)."""
    out = []
    acc = K.one(prec=K.prec + 8)
    for c in f:
        out.append(c * acc)
        acc = acc * s
    return trim(out)


def pembed(K2, f):
    """Map coefficients of f (over a subfield of K2) into K2."""
    return [K2.coerce(c) for c in f]


def pseries_inv(K, f, n):
    """Inverse of a power series f (f[0] a unit) to order n (n coefficients)."""
    if not f or not f[0].known_nonzero():
        raise PrecisionExhausted("series inversion needs a unit constant term")
    inv0 = f[0].inv()
    out = [inv0]
    for k in range(1, n):
        acc = K.zero()
        for j in range(1, min(k, len(f) - 1) + 1):
            acc = acc + f[j] * out[k - j]
        out.append(-inv0 * acc)
    return out
