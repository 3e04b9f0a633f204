"""Capped relative-precision arithmetic in Q_p and pure-step extension towers.

A Q_p value is stored as p^ord * unit + O(p^(ord+rel)) with the unit kept
modulo p^rel.  Extension elements are coefficient vectors over the base with
respect to the power basis of the defining polynomial; a step is either
unramified or Eisenstein, so valuations of vectors are exact term minima.
Valuations are normalized with v(p) = 1 and stored as Fractions whose
denominator divides the absolute ramification index.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import FieldMismatch, PrecisionExhausted, UnsupportedExtension
from .residue import ExtResidueField, PrimeResidueField

EXACT = 10 ** 9  # order sentinel for the exact zero


def _floor_frac(fr):
    return fr.numerator // fr.denominator


def _vp_int(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Qp:
    """The field Q_p with a default working relative precision (base-p digits)."""

    def __init__(self, p, prec=32):
        if not _is_prime(p):
            raise ValueError("p must be prime, got %r" % (p,))
        if prec < 4:
            raise ValueError("default relative precision must be >= 4")
        self.p = p
        self.prec = prec
        self.base = None
        self.e = self.f = 1
        self.e_abs = self.f_abs = 1
        self.degree = 1
        self.v_gen = Fraction(0)
        self.residue = PrimeResidueField(p)
        self._pp = [1, p]

    # -- helpers ---------------------------------------------------------
    def ppow(self, k):
        pp = self._pp
        while len(pp) <= k:
            pp.append(pp[-1] * self.p)
        return pp[k]

    def depth(self):
        return 0

    def __repr__(self):
        return "Qp(%d, prec=%d)" % (self.p, self.prec)

    # -- constructors ----------------------------------------------------
    def zero(self):
        return QpNum(self, EXACT, 0, 0)

    def zeroish(self, absord):
        if isinstance(absord, Fraction):
            absord = _floor_frac(absord)
        if absord >= EXACT:
            return self.zero()
        return QpNum(self, absord, 0, 0)

    def one(self, prec=None):
        return QpNum(self, 0, 1, prec or self.prec)

    def from_int(self, n, prec=None):
        prec = prec or self.prec
        if n == 0:
            return self.zero()
        v = _vp_int(n, self.p)
        return QpNum(self, v, (n // self.ppow(v)) % self.ppow(prec), prec)

    def from_fraction(self, fr, prec=None):
        fr = Fraction(fr)
        prec = prec or self.prec
        if fr == 0:
            return self.zero()
        num, den = fr.numerator, fr.denominator
        vn = _vp_int(num, self.p)
        vd = _vp_int(den, self.p)
        unit = (num // self.ppow(vn)) * pow(den // self.ppow(vd), -1, self.ppow(prec))
        return QpNum(self, vn - vd, unit % self.ppow(prec), prec)

    def coerce(self, x, prec=None):
        if isinstance(x, QpNum):
            if x.field.p != self.p:
                raise FieldMismatch("different primes")
            return x
        if isinstance(x, int):
            return self.from_int(x, prec)
        if isinstance(x, Fraction):
            return self.from_fraction(x, prec)
        raise FieldMismatch("cannot coerce %r into %r" % (x, self))

    def uniformizer(self):
        return self.from_int(self.p)

    # -- residue ---------------------------------------------------------
    def reduce(self, x):
        if x.unit == 0:
            if x.ord <= 0:
                raise PrecisionExhausted("cannot reduce a zero known only to O(p^%s)" % x.ord)
            return 0
        if x.ord < 0:
            raise ValueError("cannot reduce an element of negative valuation")
        if x.ord > 0:
            return 0
        return x.unit % self.p

    def lift_res(self, r, prec=None):
        return self.from_int(int(r), prec)


class QpNum:
    __slots__ = ("field", "ord", "unit", "rel")

    def __init__(self, field, ord, unit, rel):
        self.field = field
        self.ord = ord
        self.unit = unit
        self.rel = rel

    # -- structure -------------------------------------------------------
    def is_zeroish(self):
        return self.unit == 0

    def is_exact_zero(self):
        return self.unit == 0 and self.ord >= EXACT

    def known_nonzero(self):
        return self.unit != 0

    def valuation(self):
        """Exact valuation if known nonzero, else the absolute-precision bound."""
        return Fraction(self.ord)

    def abs_prec(self):
        return Fraction(self.ord + self.rel)

    def rel_prec(self):
        return self.rel

    def cap_abs(self, absord):
        if isinstance(absord, Fraction):
            if absord.denominator != 1:
                absord = absord.numerator // absord.denominator
            else:
                absord = absord.numerator
        if absord >= EXACT:
            return self
        if self.unit == 0:
            return self if self.ord <= absord else QpNum(self.field, absord, 0, 0)
        if self.ord + self.rel <= absord:
            return self
        rel = absord - self.ord
        if rel <= 0:
            return QpNum(self.field, absord, 0, 0)
        return QpNum(self.field, self.ord, self.unit % self.field.ppow(rel), rel)

    # -- arithmetic ------------------------------------------------------
    def _co(self, other):
        # exact scalars carry every digit; meet the element's own precision
        # instead of truncating a high-precision value to the field default
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other, prec=max(self.field.prec, self.rel + 8))
        return self.field.coerce(other)

    def __add__(self, other):
        b = self._co(other)
        a = self
        if a.unit == 0:
            return b.cap_abs(a.ord)
        if b.unit == 0:
            return a.cap_abs(b.ord)
        F = a.field
        o = a.ord if a.ord < b.ord else b.ord
        absp = min(a.ord + a.rel, b.ord + b.rel)
        m = F.ppow(absp - o)
        u = (a.unit * F.ppow(a.ord - o) + b.unit * F.ppow(b.ord - o)) % m
        if u == 0:
            return QpNum(F, absp, 0, 0)
        v = _vp_int(u, F.p)
        rel = absp - o - v
        return QpNum(F, o + v, (u // F.ppow(v)) % F.ppow(rel), rel)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        m = self.field.ppow(self.rel)
        return QpNum(self.field, self.ord, (m - self.unit) % m, self.rel)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._co(other)
        a = self
        F = a.field
        if a.unit == 0 or b.unit == 0:
            if a.is_exact_zero() or b.is_exact_zero():
                return F.zero()
            return F.zeroish(a.ord + b.ord)
        rel = a.rel if a.rel < b.rel else b.rel
        return QpNum(F, a.ord + b.ord, (a.unit * b.unit) % F.ppow(rel), rel)

    __rmul__ = __mul__

    def inv(self):
        if self.unit == 0:
            if self.is_exact_zero():
                raise ZeroDivisionError("inverse of exact zero")
            raise PrecisionExhausted("inverse of a value indistinguishable from zero")
        F = self.field
        return QpNum(F, -self.ord, pow(self.unit, -1, F.ppow(self.rel)), self.rel)

    def __truediv__(self, other):
        return self * self._co(other).inv()

    def __rtruediv__(self, other):
        return self._co(other) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = self.field.one(prec=self.rel if self.unit else self.field.prec)
        acc = self
        while n:
            if n & 1:
                out = out * acc
            acc = acc * acc
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            d = self - self._co(other)
        except FieldMismatch:
            return NotImplemented
        return d.is_zeroish()

    __hash__ = None

    # -- display / io ----------------------------------------------------
    def digits(self, n=None):
        n = n if n is not None else self.rel
        out = []
        u = self.unit
        for _ in range(n):
            u, r = divmod(u, self.field.p)
            out.append(r)
        return out

    def __repr__(self):
        if self.is_exact_zero():
            return "0"
        if self.unit == 0:
            return "O(%d^%s)" % (self.field.p, self.ord)
        ds = self.digits(min(self.rel, 6))
        body = " + ".join(
            "%d*%d^%d" % (d, self.field.p, self.ord + i) for i, d in enumerate(ds) if d
        )
        return "%s + O(%d^%d)" % (body or "0", self.field.p, self.ord + self.rel)


class ExtField:
    """A pure extension step: unramified or Eisenstein over Qp or one such step."""

    def __init__(self, base, mod_tail, kind, label=None, minimal_poly=None, gen_affine=None):
        if base.depth() >= 2:
            raise UnsupportedExtension("extension towers are limited to depth 2 over Q_p")
        if kind not in ("unramified", "eisenstein"):
            raise ValueError("bad extension kind %r" % (kind,))
        self.p = base.p
        self.base = base
        self.kind = kind
        self.mod_tail = tuple(base.coerce(c) for c in mod_tail)
        d = len(self.mod_tail)
        if d < 2:
            raise ValueError("extension degree must be >= 2")
        self.degree = d
        if kind == "unramified":
            self.e, self.f = 1, d
            self.v_gen = Fraction(0)
        else:
            self.e, self.f = d, 1
            self.v_gen = Fraction(1, d * base.e_abs)
        self.e_abs = self.e * base.e_abs
        self.f_abs = self.f * base.f_abs
        self.prec = base.prec * self.e
        self.label = label or ("%s-deg%d" % (kind, d))
        # identification data for serialization / user-facing reports
        self.minimal_poly = minimal_poly  # coefficients over the base, may be None
        self.gen_affine = gen_affine  # (shift, scale): root of minimal_poly = shift + scale*x
        if kind == "unramified":
            self.residue = ExtResidueField(
                base.residue, tuple(base.reduce(c) for c in self.mod_tail)
            )
        else:
            self.residue = base.residue
            v0 = self.mod_tail[0].valuation()
            if v0 != Fraction(1, base.e_abs):
                raise ValueError("not Eisenstein: constant term has valuation %s" % (v0,))
            for c in self.mod_tail:
                if c.valuation() < Fraction(1, base.e_abs) and c.known_nonzero():
                    raise ValueError("not Eisenstein: tail coefficient is a unit")
        # powers x^d .. x^(2d-2) as coefficient vectors, for reduction after products
        tab = []
        cur = tuple(-c for c in self.mod_tail)
        tab.append(cur)
        for _ in range(d - 2):
            cur = self._shift_reduce(cur)
            tab.append(cur)
        self._xpow = tab

    def _shift_reduce(self, vec):
        d = self.degree
        top = vec[d - 1]
        out = [self.base.zero()] + [c for c in vec[: d - 1]]
        if not top.is_exact_zero():
            for j in range(d):
                out[j] = out[j] + top * (-self.mod_tail[j])
        return tuple(out)

    def depth(self):
        return self.base.depth() + 1

    def __repr__(self):
        return "ExtField(%s over %r)" % (self.label, self.base)

    # -- constructors ----------------------------------------------------
    def zero(self):
        z = self.base.zero()
        return ExtNum(self, tuple(z for _ in range(self.degree)))

    def zeroish(self, absord):
        # O(p^absord) spread across the coefficient slots; absord in v(p)=1 units
        absord = Fraction(absord)
        return ExtNum(
            self,
            tuple(self.base.zeroish(absord - i * self.v_gen) for i in range(self.degree)),
        )

    def one(self, prec=None):
        out = [self.base.zero()] * self.degree
        out[0] = self.base.one(prec)
        return ExtNum(self, tuple(out))

    def gen(self):
        out = [self.base.zero()] * self.degree
        out[1] = self.base.one()
        return ExtNum(self, tuple(out))

    def user_gen(self):
        """Root of the user-facing minimal_poly (affine in the internal generator)."""
        if self.gen_affine is None:
            return self.gen()
        sh, sc = self.gen_affine
        return self.coerce(sh) + self.coerce(sc) * self.gen()

    def embed(self, c):
        out = [self.base.zero()] * self.degree
        out[0] = self.base.coerce(c)
        return ExtNum(self, tuple(out))

    def from_vector(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            raise ValueError("vector longer than extension degree")
        coeffs += [0] * (self.degree - len(coeffs))
        return ExtNum(self, tuple(self.base.coerce(c) for c in coeffs))

    def from_int(self, n, prec=None):
        return self.embed(self.base.from_int(n, prec))

    def from_fraction(self, fr, prec=None):
        return self.embed(self.base.from_fraction(fr, prec))

    def coerce(self, x, prec=None):
        if isinstance(x, ExtNum):
            if x.field is self:
                return x
            if x.field is self.base or (
                isinstance(self.base, ExtField) and x.field is self.base
            ):
                return self.embed(x)
            raise FieldMismatch("element of %r is not in %r" % (x.field, self))
        if isinstance(x, QpNum):
            if x.field.p != self.p:
                raise FieldMismatch("different primes")
            return self.embed(self.base.coerce(x))
        if isinstance(x, (int, Fraction)):
            return self.embed(self.base.coerce(x, prec))
        raise FieldMismatch("cannot coerce %r into %r" % (x, self))

    def uniformizer(self):
        if self.kind == "eisenstein":
            return self.gen()
        return self.embed(self.base.uniformizer())

    # -- residue ---------------------------------------------------------
    def reduce(self, x):
        if x.valuation() < 0 and x.known_nonzero():
            raise ValueError("cannot reduce an element of negative valuation")
        if self.kind == "unramified":
            return tuple(self.base.reduce(c) for c in x.coeffs)
        if x.valuation() > 0 or x.is_zeroish():
            if x.is_zeroish() and x.abs_prec() <= 0:
                raise PrecisionExhausted("cannot reduce, precision below 0")
            return self.residue.zero()
        return self.base.reduce(x.coeffs[0])

    def lift_res(self, r, prec=None):
        if self.kind == "unramified":
            return ExtNum(self, tuple(self.base.lift_res(c, prec) for c in r))
        return self.embed(self.base.lift_res(r, prec))


class ExtNum:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    # -- structure -------------------------------------------------------
    def valuation(self):
        F = self.field
        return min(c.valuation() + i * F.v_gen for i, c in enumerate(self.coeffs))

    def abs_prec(self):
        F = self.field
        return min(c.abs_prec() + i * F.v_gen for i, c in enumerate(self.coeffs))

    def rel_prec(self):
        return int((self.abs_prec() - self.valuation()) * self.field.e_abs)

    def is_zeroish(self):
        return all(c.is_zeroish() for c in self.coeffs)

    def is_exact_zero(self):
        return all(c.is_exact_zero() for c in self.coeffs)

    def known_nonzero(self):
        """True when some coefficient is a known unit*p^k below every other bound."""
        if self.is_zeroish():
            return False
        v = self.valuation()
        return any(
            c.known_nonzero() and c.valuation() + i * self.field.v_gen == v
            for i, c in enumerate(self.coeffs)
        )

    def cap_abs(self, absord):
        F = self.field
        absord = Fraction(absord)
        return ExtNum(F, tuple(c.cap_abs(absord - i * F.v_gen) for i, c in enumerate(self.coeffs)))

    # -- arithmetic ------------------------------------------------------
    def _co(self, other):
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(
                other, prec=max(self.field.prec, self.rel_prec() + 8)
            )
        return self.field.coerce(other)

    def __add__(self, other):
        b = self._co(other)
        return ExtNum(self.field, tuple(x + y for x, y in zip(self.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ExtNum(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        b = self._co(other)
        return ExtNum(self.field, tuple(x - y for x, y in zip(self.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._co(other)
        F = self.field
        d = F.degree
        base = F.base
        a_c = self.coeffs
        b_c = b.coeffs
        prod = [base.zero()] * (2 * d - 1)
        for i, x in enumerate(a_c):
            if x.is_exact_zero():
                continue
            for j, y in enumerate(b_c):
                if y.is_exact_zero():
                    continue
                prod[i + j] = prod[i + j] + x * y
        out = list(prod[:d])
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c.is_exact_zero():
                continue
            tab = F._xpow[k - d]
            for j in range(d):
                tj = tab[j]
                if not tj.is_exact_zero():
                    out[j] = out[j] + c * tj
        return ExtNum(F, tuple(out))

    __rmul__ = __mul__

    def mult_matrix(self):
        """Matrix of multiplication by self on the power basis (columns self*x^j)."""
        F = self.field
        cols = [self]
        for _ in range(F.degree - 1):
            cols.append(cols[-1] * F.gen())
        return [[cols[j].coeffs[i] for j in range(F.degree)] for i in range(F.degree)]

    def inv(self):
        if self.is_zeroish():
            if self.is_exact_zero():
                raise ZeroDivisionError("inverse of exact zero")
            raise PrecisionExhausted("inverse of a value indistinguishable from zero")
        F = self.field
        M = self.mult_matrix()
        rhs = [F.base.zero() for _ in range(F.degree)]
        rhs[0] = F.base.one(prec=F.base.prec + 8)
        sol = solve_linear(F.base, M, rhs)
        return ExtNum(F, tuple(sol))

    def __truediv__(self, other):
        return self * self._co(other).inv()

    def __rtruediv__(self, other):
        return self._co(other) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = self.field.one()
        acc = self
        while n:
            if n & 1:
                out = out * acc
            acc = acc * acc
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            d = self - self._co(other)
        except FieldMismatch:
            return NotImplemented
        return d.is_zeroish()

    __hash__ = None

    def __repr__(self):
        return "Ext(%s)" % (", ".join(repr(c) for c in self.coeffs))


def solve_linear(field, M, rhs):
    """Solve M x = rhs over a local field by elimination with min-valuation pivots."""
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    perm = list(range(n))
    for col in range(n):
        piv, pivval = None, None
        for r in range(col, n):
            c = A[r][col]
            if c.known_nonzero():
                v = c.valuation()
                if pivval is None or v < pivval:
                    piv, pivval = r, v
        if piv is None:
            raise PrecisionExhausted("linear solve: no usable pivot in column %d" % col)
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inv()
        for r in range(n):
            if r == col:
                continue
            factor = A[r][col] * inv
            if factor.is_exact_zero():
                continue
            for k in range(col, n + 1):
                A[r][k] = A[r][k] - factor * A[col][k]
    return [A[i][n] * A[i][i].inv() for i in range(n)]
