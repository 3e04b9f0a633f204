"""Exact integration of meromorphic forms on the projective line.

Primitives are rational functions plus logs of linear factors with globally
consistent constants; expanding a primitive at any point (or at infinity)
gives a Laurent-log element, so the pairing of two forms is the sum of local
double indices over their singular points.  Splitting fields are built on
demand through `padic.factor` and everything stays in one tower.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import (
    NotThirdKindFamily,
    PrecisionExhausted,
    SplittingFieldTooLarge,
)
from .laurent import A1Element, LaurentTrunc, double_index
from .padic import poly as P
from .padic.factor import splitting_roots
from .padic.logmap import padic_log


class PointP1:
    """A point of the projective line: a finite field element or infinity."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        self.value = value  # None means infinity

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinite(self):
        return self.value is None

    def __repr__(self):
        return "oo" if self.is_infinite else "P(%r)" % (self.value,)


INF = PointP1.infinity()


class RationalFn:
    """num/den with den monic; constructed reduced when certifiable."""

    def __init__(self, field, num, den=None, reduce=True):
        self.field = field
        num = P.pcoerce(field, num)
        den = P.pcoerce(field, den if den is not None else [field.one()])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce and num:
            try:
                g = P.pgcd_monic(field, num, den)
                if P.pdeg(g) > 0:
                    num = P.pdivmod(field, num, g)[0]
                    den = P.pdivmod(field, den, g)[0]
            except PrecisionExhausted:
                pass
        lead = den[-1]
        if not lead.known_nonzero():
            raise PrecisionExhausted("denominator leading coefficient unknown")
        inv = lead.inv()
        self.num = P.pscale(field, num, inv)
        self.den = [c * inv for c in den]

    def degree_pair(self):
        return P.pdeg(self.num), P.pdeg(self.den)

    def is_zero(self):
        return not self.num

    def __add__(self, other):
        other = self._co(other)
        num = P.padd(
            self.field,
            P.pmul(self.field, self.num, other.den),
            P.pmul(self.field, other.num, self.den),
        )
        return RationalFn(self.field, num, P.pmul(self.field, self.den, other.den))

    def __sub__(self, other):
        return self + (-self._co(other))

    def __neg__(self):
        return RationalFn(self.field, P.pneg(self.field, self.num), self.den, reduce=False)

    def __mul__(self, other):
        other = self._co(other)
        return RationalFn(
            self.field,
            P.pmul(self.field, self.num, other.num),
            P.pmul(self.field, self.den, other.den),
        )

    def __truediv__(self, other):
        other = self._co(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(
            self.field,
            P.pmul(self.field, self.num, other.den),
            P.pmul(self.field, self.den, other.num),
        )

    def _co(self, other):
        if isinstance(other, RationalFn):
            return other
        return RationalFn(self.field, [self.field.coerce(other)], None, reduce=False)

    def derivative(self):
        K = self.field
        num = P.psub(
            K,
            P.pmul(K, P.pderiv(K, self.num), self.den),
            P.pmul(K, self.num, P.pderiv(K, self.den)),
        )
        return RationalFn(K, num, P.pmul(K, self.den, self.den))

    def dlog(self):
        """d(num/den)/(num/den) as a form body: num'/num - den'/den."""
        K = self.field
        return RationalFn(K, P.pderiv(K, self.num), self.num) - RationalFn(
            K, P.pderiv(K, self.den), self.den
        )

    def __call__(self, x):
        n = P.peval(self.field, self.num, x)
        d = P.peval(self.field, self.den, x)
        return n * d.inv()

    def __repr__(self):
        return "RationalFn(num=%s, den=%s)" % (self.num, self.den)


class MeromorphicForm:
    """body * dt; the residues over the full projective line sum to zero."""

    def __init__(self, body):
        self.body = body
        self.field = body.field

    @classmethod
    def from_polys(cls, field, num, den=None):
        return cls(RationalFn(field, num, den))

    @classmethod
    def dlog(cls, field, poly):
        return cls(RationalFn(field, poly).dlog())

    def __add__(self, other):
        return MeromorphicForm(self.body + other.body)

    def __sub__(self, other):
        return MeromorphicForm(self.body - other.body)

    def __neg__(self):
        return MeromorphicForm(-self.body)

    def scale(self, c):
        return MeromorphicForm(self.body * c)

    def is_zero(self):
        return self.body.is_zero()

    def mobius_pullback(self, a, b, c, d):
        """Pull back along t = (a*s + b)/(c*s + d), ad - bc != 0."""
        K = self.field
        a, b, c, d = (K.coerce(v) for v in (a, b, c, d))
        det = a * d - b * c
        if not det.known_nonzero():
            raise ValueError("Moebius matrix is singular at this precision")
        up = [b, a]  # b + a s
        dn = [d, c]
        deg = max(P.pdeg(self.body.num), P.pdeg(self.body.den))
        num_c = _compose_homog(K, self.body.num, up, dn, deg)
        den_c = _compose_homog(K, self.body.den, up, dn, deg)
        body = RationalFn(K, num_c, den_c)
        dphi = RationalFn(K, [det], P.pmul(K, dn, dn))
        return MeromorphicForm(body * dphi)

    def __repr__(self):
        return "(%r) dt" % (self.body,)


def _compose_homog(K, f, up, dn, deg):
    """f((up)/(dn)) * dn^deg as a polynomial, for deg >= deg f."""
    out = []
    for k in range(deg + 1):
        c = f[k] if k < len(f) else K.zero()
        if c.is_exact_zero():
            continue
        term = [c]
        for _ in range(k):
            term = P.pmul(K, term, up)
        for _ in range(deg - k):
            term = P.pmul(K, term, dn)
        out = P.padd(K, out, term)
    return out


class PartialFractions:
    """ω = q(t)dt + Σ_k≥2 c_{a,k} dt/(t-a)^k + Σ c_{a,1} dlog(t-a), over one tower."""

    def __init__(self, field, poly_part, poles, res_inf):
        self.field = field  # the splitting tower
        self.poly_part = poly_part
        self.poles = poles  # list of (a, [c_1, ..., c_m])
        self.res_inf = res_inf

    @property
    def exact(self):
        """Primitive of the non-log part, as a RationalFn over the tower."""
        return self.exact_primitive().as_rational()

    @property
    def pole_terms(self):
        """Poles as (residue, point, higher-order tail coefficients)."""
        return [(cs[0], a, list(cs[1:])) for a, cs in self.poles]

    def exact_primitive(self):
        L = self.field
        poly_int = [L.zero()] + [
            c * Fraction(1, k + 1) for k, c in enumerate(self.poly_part)
        ]
        frac_terms = []
        for a, cs in self.poles:
            for k, c in enumerate(cs[1:], start=2):
                if not c.is_exact_zero():
                    frac_terms.append((c * Fraction(-1, k - 1), a, k - 1))
        return Primitive(L, P.trim(poly_int), frac_terms, [])

    def residues(self):
        return [(a, cs[0]) for a, cs in self.poles]


def _root_multiplicity(K, den, a):
    m = 0
    f = den
    while P.pdeg(f) > 0:
        q, r = P.pdivmod(K, f, [-a, K.one(prec=K.prec + 8)])
        if r and not r[0].is_zeroish():
            break
        m += 1
        f = q
    return m


def partial_fractions(form, max_field_degree=8, known=None):
    """Decompose over a splitting tower of the denominator.

    `known` optionally carries (roots, field) from a prior factorization of a
    polynomial divisible by the denominator.
    """
    K = form.field
    num, den = form.body.num, form.body.den
    if known is None:
        roots, L = splitting_roots(den, K, max_abs_degree=max_field_degree)
        if sum(m for _, m in roots) != P.pdeg(den):
            raise SplittingFieldTooLarge("denominator did not split in the tower")
    else:
        roots, L = known
    numL = [L.coerce(c) for c in num]
    denL = [L.coerce(c) for c in den]
    q, r = P.pdivmod(L, numL, denL)
    poles = []
    for a, _m in roots:
        m = _root_multiplicity(L, denL, a)
        if m == 0:
            continue
        cof = denL
        for _ in range(m):
            cof = P.pdivmod(L, cof, [-a, L.one(prec=L.prec + 8)])[0]
        # series of r/cof at t = a+w, m terms
        rsh = P.pshift_var(L, r, a)[:m]
        csh = P.pshift_var(L, cof, a)[:m]
        inv = P.pseries_inv(L, csh, m)
        cs = []
        for k in range(1, m + 1):
            i = m - k
            acc = L.zero()
            for j in range(i + 1):
                if j < len(rsh):
                    acc = acc + rsh[j] * inv[i - j]
            cs.append(acc)
        poles.append((a, cs))
    dn, dd = P.pdeg(numL), P.pdeg(denL)
    res_inf = -r[dd - 1] if dd >= 1 and len(r) == dd else L.zero()
    total = res_inf
    for _a, cs in poles:
        total = total + cs[0]
    if total.known_nonzero():
        raise PrecisionExhausted("residue sum over P^1 failed to vanish")
    return PartialFractions(L, q, poles, res_inf)


class Primitive:
    """poly_part + Σ coef/(t-a)^j + Σ c_i log(t-a_i) + const, over one tower."""

    def __init__(self, field, poly_part, frac_terms, logterms, const=None):
        self.field = field
        self.poly_part = poly_part
        self.frac_terms = frac_terms  # (coef, a, j): coef/(t-a)^j
        self.logterms = logterms  # (c, a): c*log(t-a)
        self.const = const if const is not None else field.zero()

    def with_const(self, c):
        return Primitive(self.field, self.poly_part, self.frac_terms, self.logterms, c)

    def as_rational(self):
        L = self.field
        out = RationalFn(L, self.poly_part or [], None, reduce=False)
        for coef, a, j in self.frac_terms:
            den = [L.one(prec=L.prec + 8)]
            for _ in range(j):
                den = P.pmul(L, den, [-a, L.one(prec=L.prec + 8)])
            out = out + RationalFn(L, [coef], den, reduce=False)
        return out

    def derivative_form(self):
        L = self.field
        body = RationalFn(L, P.pderiv(L, self.poly_part) if self.poly_part else [])
        for coef, a, j in self.frac_terms:
            den = [L.one(prec=L.prec + 8)]
            for _ in range(j + 1):
                den = P.pmul(L, den, [-a, L.one(prec=L.prec + 8)])
            body = body + RationalFn(L, [coef * (-j)], den, reduce=False)
        for c, a in self.logterms:
            body = body + RationalFn(L, [c], [-a, L.one(prec=L.prec + 8)], reduce=False)
        return MeromorphicForm(body)

    def max_pole_order(self):
        m = max((j for _c, _a, j in self.frac_terms), default=0)
        if self.poly_part:
            m = max(m, P.pdeg(self.poly_part))  # pole at infinity
        return max(m, 1)


def primitive(form, branch, max_field_degree=8, known=None):
    """A global primitive: rational part integrated termwise, log terms from residues."""
    pf = partial_fractions(form, max_field_degree=max_field_degree, known=known)
    base = pf.exact_primitive()
    logterms = [(cs[0], a) for a, cs in pf.poles if not cs[0].is_exact_zero()]
    return Primitive(pf.field, base.poly_part, base.frac_terms, logterms)


def _log1p_series(L, ratio, window):
    """log(1 + ratio*w) coefficients as a LaurentTrunc starting at w^1."""
    coeffs = []
    power = L.one(prec=L.prec + 8)
    for k in range(1, window):
        power = power * ratio
        coeffs.append(power * Fraction((-1) ** (k + 1), k))
    return LaurentTrunc(L, 1, coeffs, window)


def expand_at(F, x, window, branch):
    """Expand a Primitive at a point into f + a*L in the local variable.

    Local variable w = t - x at finite x, u = 1/t at infinity; log(t-a)
    expands as L at x = a, as log(x-a) + log(1 + w/(x-a)) at finite x != a,
    and as -L + log(1 - a*u) at infinity.
    """
    L = F.field
    acc = LaurentTrunc.const(L, F.const, window)
    a_coeff = L.zero()
    if not x.is_infinite:
        x0 = L.coerce(x.value)
        shifted = P.pshift_var(L, F.poly_part, x0) if F.poly_part else []
        acc = acc + LaurentTrunc(L, 0, [
            shifted[k] if k < len(shifted) else L.zero() for k in range(window)
        ], window)
        for coef, a, j in F.frac_terms:
            d = x0 - L.coerce(a)
            if d.is_zeroish():
                acc = acc + LaurentTrunc.from_pairs(L, [(-j, coef)], window)
            else:
                # coef/(d+w)^j = coef * sum_k (-1)^k C(j+k-1,k) d^(-j-k) w^k
                inv = d.inv()
                scale = coef * inv ** j
                coeffs = []
                for k in range(window):
                    coeffs.append(scale * Fraction(comb(j + k - 1, k)) * (-inv) ** k)
                acc = acc + LaurentTrunc(L, 0, coeffs, window)
        for c, a in F.logterms:
            d = x0 - L.coerce(a)
            if d.is_zeroish():
                a_coeff = a_coeff + c
            else:
                acc = acc + LaurentTrunc.const(L, c * padic_log(d, branch), window)
                acc = acc + _log1p_series(L, d.inv(), window) * c
    else:
        for k, c in enumerate(F.poly_part or []):
            if not c.is_exact_zero():
                acc = acc + LaurentTrunc.from_pairs(L, [(-k, c)], window)
        for coef, a, j in F.frac_terms:
            # coef * u^j / (1 - a u)^j
            aL = L.coerce(a)
            coeffs = []
            for k in range(window - j):
                coeffs.append(coef * Fraction(comb(j + k - 1, k)) * aL ** k)
            acc = acc + LaurentTrunc(L, j, coeffs, window)
        for c, a in F.logterms:
            a_coeff = a_coeff - c
            acc = acc + _log1p_series(L, -L.coerce(a), window) * c
    return A1Element(acc, a_coeff)


def residue_divisor(form, max_field_degree=8, known=None):
    """[(point, residue)] over the tower, infinity included when it carries one."""
    pf = partial_fractions(form, max_field_degree=max_field_degree, known=known)
    out = [(PointP1(a), c) for a, c in pf.residues() if not c.is_zeroish()]
    if not pf.res_inf.is_zeroish():
        out.append((INF, pf.res_inf))
    return out, pf


def is_second_kind(form, max_field_degree=8, known=None):
    divisor, _ = residue_divisor(form, max_field_degree, known)
    return not divisor


def is_third_kind(form, max_field_degree=8, known=None):
    pf = partial_fractions(form, max_field_degree=max_field_degree, known=known)
    if pf.poly_part:
        return False
    return all(len(cs) == 1 for _a, cs in pf.poles)


def global_double_index(omega, eta, branch, max_field_degree=8, report=False,
                        working_prec=None):
    """Sum of local double indices over the singular points plus infinity.

    The primitives are built once over a common tower, so all log constants
    are globally consistent; the result is certified to lie in the base field.
    Nearby poles force genuine cancellation in the local sums, so the whole
    computation runs at a boosted working precision (default 2N + 16) and the
    claimed digits of the answer stay honest.
    """
    K = omega.field
    from .padic import Qp as _Qp
    from .padic.element import QpNum as _QpNum

    if isinstance(K, _Qp):
        boost = working_prec or (2 * K.prec + 16)
        if boost > K.prec:
            K2 = _Qp(K.p, boost)

            def retag(c):
                return _QpNum(K2, c.ord, c.unit, c.rel)

            omega = MeromorphicForm(RationalFn(
                K2, [retag(c) for c in omega.body.num],
                [retag(c) for c in omega.body.den], reduce=False))
            eta = MeromorphicForm(RationalFn(
                K2, [retag(c) for c in eta.body.num],
                [retag(c) for c in eta.body.den], reduce=False))
            lam = branch.lam
            if isinstance(lam, _QpNum):
                from .padic import LogBranch as _LogBranch

                branch = _LogBranch(_QpNum(K2, lam.ord, lam.unit, lam.rel))
            K = K2
    den_prod = P.pmul(K, omega.body.den, eta.body.den)
    roots, L = splitting_roots(den_prod, K, max_abs_degree=max_field_degree)
    if sum(m for _, m in roots) != P.pdeg(den_prod):
        raise SplittingFieldTooLarge("poles did not split in the tower")
    Fw = primitive(omega, branch, known=(roots, L))
    Gw = primitive(eta, branch, known=(roots, L))
    window = Fw.max_pole_order() + Gw.max_pole_order() + 2
    points = [PointP1(a) for a, _ in roots] + [INF]
    local = []
    total = L.zero()
    for x in points:
        FA = expand_at(Fw, x, window, branch)
        GA = expand_at(Gw, x, window, branch)
        v = double_index(FA, GA)
        local.append((x, v))
        total = total + v
    base_total = _certify_in_base(total, K)
    if report:
        return base_total, local
    return base_total


def _certify_in_base(x, K):
    """Check an element of a tower lies in the base K; return it there."""
    while x.field is not K:
        F = x.field
        if not hasattr(F, "base"):
            break
        for c in x.coeffs[1:]:
            if not c.is_zeroish():
                raise PrecisionExhausted(
                    "global pairing value failed base-field certification"
                )
        x = x.coeffs[0]
    return x


# ---------------------------------------------------------------------------
# parameter families of forms


class FormFamily:
    """num(s,t)/den(s,t) dt: coefficients in t are polynomials in s."""

    def __init__(self, field, num_st, den_st):
        # num_st, den_st: lists over t of lists over s of field elements
        self.field = field
        self.num = [P.pcoerce(field, c) for c in num_st]
        self.den = [P.pcoerce(field, c) for c in den_st]

    def at(self, s0):
        K = self.field
        s0 = K.coerce(s0)
        num = [P.peval(K, c, s0) for c in self.num]
        den = [P.peval(K, c, s0) for c in self.den]
        return MeromorphicForm(RationalFn(K, num, den))

    def s_derivative(self):
        K = self.field
        return (
            [P.pderiv(K, c) for c in self.num],
            [P.pderiv(K, c) for c in self.den],
        )


def family_derivative(family, s0, max_field_degree=8):
    """d/ds at s0 of a family of simple-pole forms; the result has no residues."""
    K = family.field
    base = family.at(s0)
    if not is_third_kind(base, max_field_degree):
        raise NotThirdKindFamily("family member at s0 is not of the third kind")
    dnum, dden = family.s_derivative()
    s0 = K.coerce(s0)
    nd = [P.peval(K, c, s0) for c in dnum]
    dd = [P.peval(K, c, s0) for c in dden]
    n0 = [P.peval(K, c, s0) for c in family.num]
    d0 = [P.peval(K, c, s0) for c in family.den]
    num = P.psub(K, P.pmul(K, nd, d0), P.pmul(K, n0, dd))
    den = P.pmul(K, d0, d0)
    out = MeromorphicForm(RationalFn(K, num, den))
    if not is_second_kind(out, max_field_degree):
        raise NotThirdKindFamily("derivative carries residues; family is not third kind")
    return out
