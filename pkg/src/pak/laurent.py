"""Truncated Laurent series with a formal logarithm adjoined, and the double index.

A LaurentTrunc holds coefficients for exponents [low, window); the window is
the first unknown exponent and shrinks pessimistically under arithmetic.
LogPoly stacks Laurent coefficients of powers of the formal symbol L = log z,
with d(L) = dz/z.  On the subspace of elements f + a*L the antisymmetric
pairing  <F, G> = Res(f dg) + b*f0 - a*g0  extends (F, G) |-> Res(F dG); it
is computed exactly or not at all (WindowUnderflow), never truncated.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    BadSubstitution,
    FieldMismatch,
    LogTermPresent,
    PrecisionExhausted,
    WindowUnderflow,
)
from .padic.logmap import padic_log

DEFAULT_WINDOW = 64


class LaurentTrunc:
    """Sum of coeffs[k] * z^(low+k) for 0 <= k < window - low; O(z^window) tail."""

    __slots__ = ("field", "low", "coeffs", "window")

    def __init__(self, field, low, coeffs, window=None):
        self.field = field
        coeffs = [field.coerce(c) for c in coeffs]
        if window is None:
            window = low + len(coeffs)
        if window - low != len(coeffs):
            raise ValueError("window/coefficient mismatch")
        self.low = low
        self.coeffs = coeffs
        self.window = window

    @classmethod
    def zero(cls, field, window=DEFAULT_WINDOW, low=0):
        return cls(field, low, [field.zero()] * (window - low), window)

    @classmethod
    def const(cls, field, c, window=DEFAULT_WINDOW):
        out = cls.zero(field, window)
        out.coeffs[0 - out.low] = field.coerce(c)
        return out

    @classmethod
    def from_pairs(cls, field, pairs, window=DEFAULT_WINDOW):
        low = min((k for k, _ in pairs), default=0)
        out = cls(field, low, [field.zero()] * (window - low), window)
        for k, c in pairs:
            if k >= window:
                raise WindowUnderflow("term z^%d outside window %d" % (k, window))
            out.coeffs[k - low] = out.coeffs[k - low] + c
        return out

    def coeff(self, k):
        """Coefficient of z^k; requires k < window."""
        if k >= self.window:
            raise WindowUnderflow("coefficient z^%d beyond window %d" % (k, self.window))
        if k < self.low:
            return self.field.zero()
        return self.coeffs[k - self.low]

    def true_low(self):
        """Smallest exponent with a known-nonzero coefficient (None if none)."""
        for k, c in enumerate(self.coeffs):
            if c.known_nonzero():
                return self.low + k
        return None

    def is_zeroish(self):
        return all(c.is_zeroish() for c in self.coeffs)

    def _align(self, other):
        if not isinstance(other, LaurentTrunc):
            other = LaurentTrunc.const(self.field, other, window=self.window)
        if other.field is not self.field:
            raise FieldMismatch("Laurent series over different fields")
        return other

    def __add__(self, other):
        other = self._align(other)
        low = min(self.low, other.low)
        window = min(self.window, other.window)
        if window <= low:
            raise WindowUnderflow("empty window after alignment")
        out = [self.field.zero()] * (window - low)
        for src in (self, other):
            for k, c in enumerate(src.coeffs):
                e = src.low + k
                if low <= e < window:
                    out[e - low] = out[e - low] + c
        return LaurentTrunc(self.field, low, out, window)

    __radd__ = __add__

    def __neg__(self):
        return LaurentTrunc(self.field, self.low, [-c for c in self.coeffs], self.window)

    def __sub__(self, other):
        return self + (-self._align(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentTrunc):
            c = self.field.coerce(other)
            return LaurentTrunc(
                self.field, self.low, [a * c for a in self.coeffs], self.window
            )
        other = self._align(other)
        f, g = self, other
        # O(z^wf)*g spills at wf + low_g and symmetrically
        window = min(f.window + g.low, g.window + f.low)
        low = f.low + g.low
        if window <= low:
            raise WindowUnderflow("empty product window")
        out = [self.field.zero()] * (window - low)
        for i, a in enumerate(f.coeffs):
            if a.is_exact_zero():
                continue
            ei = f.low + i
            for j, b in enumerate(g.coeffs):
                e = ei + g.low + j
                if e >= window:
                    break
                out[e - low] = out[e - low] + a * b
        return LaurentTrunc(self.field, low, out, window)

    __rmul__ = __mul__

    def shift(self, n):
        """Multiply by z^n."""
        return LaurentTrunc(self.field, self.low + n, list(self.coeffs), self.window + n)

    def inv(self):
        """Inverse of a series whose lowest known-nonzero coefficient leads."""
        n = self.true_low()
        if n is None:
            raise PrecisionExhausted("inverting a series indistinguishable from 0")
        for k in range(self.low, n):
            if not self.coeff(k).is_zeroish():
                raise PrecisionExhausted("cannot certify leading coefficient")
        lead = self.coeff(n)
        m = self.window - n  # number of unit-series coefficients available
        unit = [self.coeff(n + k) for k in range(m)]
        inv0 = lead.inv()
        out = [inv0]
        for k in range(1, m):
            acc = self.field.zero()
            for j in range(1, k + 1):
                acc = acc + unit[j] * out[k - j]
            out.append(-inv0 * acc)
        return LaurentTrunc(self.field, -n, out, -n + m)

    def __truediv__(self, other):
        return self * self._align(other).inv()

    def pow(self, n):
        if n == 0:
            return LaurentTrunc.const(self.field, 1, window=self.window)
        if n < 0:
            return self.inv().pow(-n)
        out = None
        acc = self
        while n:
            if n & 1:
                out = acc if out is None else out * acc
            n >>= 1
            if n:
                acc = acc * acc
        return out

    def trimmed(self):
        """Drop exact-zero low coefficients (window unchanged)."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k].is_exact_zero():
            k += 1
        if k == 0:
            return self
        return LaurentTrunc(self.field, self.low + k, self.coeffs[k:], self.window)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.known_nonzero():
                terms.append("(%r)*z^%d" % (c, self.low + k))
            if len(terms) > 4:
                terms.append("...")
                break
        return "Laurent[%s + O(z^%d)]" % (" + ".join(terms) or "0", self.window)


class LogPoly:
    """Polynomial in L = log z with LaurentTrunc coefficients: sum terms[m] * L^m."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        terms = list(terms)
        while len(terms) > 1 and terms[-1].is_zeroish():
            terms.pop()
        self.field = field
        self.terms = terms

    @classmethod
    def from_laurent(cls, f):
        return cls(f.field, [f])

    @classmethod
    def formal_log(cls, field, window=DEFAULT_WINDOW):
        return cls(field, [LaurentTrunc.zero(field, window), LaurentTrunc.const(field, 1, window)])

    def log_degree(self):
        return len(self.terms) - 1

    def __add__(self, other):
        if not isinstance(other, LogPoly):
            other = LogPoly.from_laurent(self.terms[0]._align(other))
        n = max(len(self.terms), len(other.terms))
        window = min(
            min(t.window for t in self.terms), min(t.window for t in other.terms)
        )
        out = []
        for m in range(n):
            acc = LaurentTrunc.zero(self.field, window)
            if m < len(self.terms):
                acc = acc + self.terms[m]
            if m < len(other.terms):
                acc = acc + other.terms[m]
            out.append(acc)
        return LogPoly(self.field, out)

    def __neg__(self):
        return LogPoly(self.field, [-t for t in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LogPoly):
            out = [
                LaurentTrunc.zero(self.field, min(t.window for t in self.terms + other.terms))
                for _ in range(len(self.terms) + len(other.terms) - 1)
            ]
            for i, a in enumerate(self.terms):
                for j, b in enumerate(other.terms):
                    out[i + j] = out[i + j] + a * b
            return LogPoly(self.field, out)
        return LogPoly(self.field, [t * other for t in self.terms])

    __rmul__ = __mul__

    def scalar(self, c):
        return LogPoly(self.field, [t * c for t in self.terms])

    def is_zeroish(self):
        return all(t.is_zeroish() for t in self.terms)

    def __repr__(self):
        return "LogPoly[%s]" % (" + ".join("(%r)*L^%d" % (t, m) for m, t in enumerate(self.terms)))


class LogForm:
    """body * dz with body a LogPoly."""

    __slots__ = ("body",)

    def __init__(self, body):
        self.body = body

    def __add__(self, other):
        return LogForm(self.body + other.body)

    def __sub__(self, other):
        return LogForm(self.body - other.body)

    def __neg__(self):
        return LogForm(-self.body)

    def is_zeroish(self):
        return self.body.is_zeroish()

    def __repr__(self):
        return "(%r) dz" % (self.body,)


class A1Element:
    """f + a*L with f a LaurentTrunc and a a scalar: the domain of the pairing."""

    __slots__ = ("f", "a")

    def __init__(self, f, a):
        self.f = f
        self.a = f.field.coerce(a)

    @property
    def field(self):
        return self.f.field

    def constant_coeff(self):
        return self.f.coeff(0)

    def as_logpoly(self):
        return LogPoly(self.field, [self.f, LaurentTrunc.const(self.field, self.a, self.f.window)])

    def __add__(self, other):
        return A1Element(self.f + other.f, self.a + other.a)

    def __sub__(self, other):
        return A1Element(self.f - other.f, self.a - other.a)

    def scalar(self, c):
        return A1Element(self.f * c, self.a * c)

    def __repr__(self):
        return "A1[%r + (%r)*L]" % (self.f, self.a)


# ---------------------------------------------------------------------------
# calculus


def differentiate(F):
    """d(z^k L^m) = (k z^(k-1) L^m + m z^(k-1) L^(m-1)) dz, extended linearly."""
    field = F.field
    out = []
    for m, t in enumerate(F.terms):
        if t.window <= t.low:
            raise WindowUnderflow("window too short to differentiate")
        dt = LaurentTrunc(
            field,
            t.low - 1,
            [c * (t.low + k) for k, c in enumerate(t.coeffs)],
            t.window - 1,
        )
        out.append(dt)
        if m + 1 < len(F.terms):
            nxt = F.terms[m + 1]
            out[m] = out[m] + LaurentTrunc(
                field, nxt.low - 1, [c * (m + 1) for c in nxt.coeffs], nxt.window - 1
            )
    return LogForm(LogPoly(field, out))


def integrate(omega):
    """The primitive with zero z^0 L^0 coefficient.

    Rules: int z^(-1) L^m dz = L^(m+1)/(m+1);
           int z^k L^m dz = z^(k+1) L^m/(k+1) - (m/(k+1)) int z^k L^(m-1) dz.
    """
    field = omega.body.field
    window = min(t.window for t in omega.body.terms)
    M = len(omega.body.terms)
    out = [LaurentTrunc.zero(field, window + 1) for _ in range(M + 1)]

    def add_term(k, m, c):
        # integrate c * z^k L^m dz
        if c.is_exact_zero():
            return
        if k == -1:
            tgt = out[m + 1]
            tgt.coeffs[0 - tgt.low] = tgt.coeffs[0 - tgt.low] + c * Fraction(1, m + 1)
            return
        cc = c * Fraction(1, k + 1)
        tgt = out[m]
        if k + 1 >= tgt.window:
            raise WindowUnderflow("primitive term z^%d beyond window" % (k + 1,))
        if k + 1 < tgt.low:
            grow = tgt.low - (k + 1)
            tgt.coeffs[:0] = [field.zero()] * grow
            tgt.low = k + 1
        tgt.coeffs[k + 1 - tgt.low] = tgt.coeffs[k + 1 - tgt.low] + cc
        if m > 0:
            add_term(k, m - 1, -cc * m)

    for m, t in enumerate(omega.body.terms):
        for kk, c in enumerate(t.coeffs):
            add_term(t.low + kk, m, c)
    return LogPoly(field, out)


def residue(omega):
    """Res of a form with no L-part: the z^(-1) coefficient of the body."""
    if omega.body.log_degree() > 0:
        for t in omega.body.terms[1:]:
            if not t.is_zeroish():
                raise LogTermPresent("residue undefined for forms with log terms")
    return omega.body.terms[0].coeff(-1)


def res_dF(F):
    """Res dF for F = f + a*L: the Laurent part contributes nothing."""
    return F.a


def laurent_residue_pairing(f, g):
    """Res(f dg) summed exactly; WindowUnderflow when windows cannot cover it."""
    field = f.field
    # Res(f dg) = sum_j j g_j f_{-j}; support j in [g.low, -f.low]
    if g.window <= -f.low or f.window <= -g.low:
        raise WindowUnderflow(
            "windows (%d..%d), (%d..%d) cannot certify Res(f dg)"
            % (f.low, f.window, g.low, g.window)
        )
    acc = field.zero()
    for j in range(g.low, -f.low + 1):
        if j == 0:
            continue
        acc = acc + g.coeff(j) * f.coeff(-j) * j
    return acc


def double_index(F, G):
    """The antisymmetric bilinear pairing on f + a*L elements.

    <F, G> = Res(f dg) + b*f0 - a*g0, the unique antisymmetric bilinear
    extension of (F, G) |-> Res(F dG): antisymmetry follows from
    Res(f dg) + Res(g df) = Res d(fg) = 0.
    """
    return (
        laurent_residue_pairing(F.f, G.f)
        + G.a * F.constant_coeff()
        - F.a * G.constant_coeff()
    )


def substitute(F, alpha, branch):
    """Substitute z = alpha(w), alpha = a_n w^n + ..., n >= 1, into f + a*L.

    L maps to n*L_w + log(a_n) + log(1 + tail) with the last term a genuine
    series; the Laurent part composes by substitution.
    """
    field = F.field
    n = alpha.true_low()
    if n is None or n <= 0:
        raise BadSubstitution("substitution must have positive leading exponent")
    for k in range(alpha.low, n):
        if not alpha.coeff(k).is_zeroish():
            raise BadSubstitution("cannot certify leading exponent")
    a_n = alpha.coeff(n)
    # unit tail u with alpha = a_n w^n (1 + u)
    m = alpha.window - n
    inv_an = a_n.inv()
    u = LaurentTrunc(
        field, 1, [alpha.coeff(n + k) * inv_an for k in range(1, m)], m
    )
    # log(1+u) as a w-series
    log1p = LaurentTrunc.zero(field, u.window)
    upow = None
    for k in range(1, u.window):
        upow = u if upow is None else upow * u
        log1p = log1p + upow * Fraction((-1) ** (k + 1), k)
        if upow.true_low() is not None and upow.true_low() >= u.window:
            break
    la = padic_log(a_n, branch)
    # compose the Laurent part
    comp = _compose(F.f, alpha)
    extra = (log1p + la) * F.a
    return A1Element(comp + extra, F.a * n)


def _compose(f, alpha):
    field = f.field
    n = alpha.true_low()
    # alpha^k carries error O(w^(n(k-1) + W_alpha)); worst k is f.low
    window = min(n * f.window, n * (f.low - 1) + alpha.window)
    low = min(0, n * f.low)
    if window <= low:
        raise WindowUnderflow("composition window collapsed")
    out = LaurentTrunc.zero(field, window, low=low)
    apow_cache = {}

    def apow(k):
        if k in apow_cache:
            return apow_cache[k]
        if k == 0:
            r = LaurentTrunc.const(field, 1, window=alpha.window)
        elif k > 0:
            r = apow(k - 1) * alpha if k > 1 else alpha
        else:
            r = apow(k + 1) * alpha.inv() if k < -1 else alpha.inv()
        apow_cache[k] = r
        return r

    for i, c in enumerate(f.coeffs):
        if c.is_exact_zero():
            continue
        k = f.low + i
        out = out + apow(k) * c
    return out


def logpoly_to_json(F):
    from .padic import element_to_json

    return {
        "L_deg": F.log_degree(),
        "coeffs": [[t.low, [element_to_json(c) for c in t.coeffs]] for t in F.terms],
    }


def logpoly_from_json(field, obj):
    from .padic import element_from_json

    terms = []
    for low, cs in obj["coeffs"]:
        coeffs = [element_from_json(field, c) for c in cs]
        terms.append(LaurentTrunc(field, low, coeffs))
    return LogPoly(field, terms)
