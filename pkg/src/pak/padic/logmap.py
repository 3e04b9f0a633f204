"""Branch-parameterized p-adic logarithm, Teichmueller lift, equality contract."""

from __future__ import annotations

from fractions import Fraction

from ..errors import PrecisionExhausted, ZeroArgument


class LogBranch:
    """A branch of the logarithm: the assigned value of log(p).

    Any element of the base field is a legal branch value; lambda = 0 is the
    usual (Iwasawa) choice.  Every operation that takes logs threads a branch
    explicitly.
    """

    def __init__(self, lam):
        self.lam = lam

    @classmethod
    def iwasawa(cls, field):
        return cls(field.zero())

    def __repr__(self):
        return "LogBranch(%r)" % (self.lam,)


def _logp_bound(k, p):
    b = 0
    q = p
    while q <= k:
        b += 1
        q *= p
    return b


def _one_unit_log(y):
    """log of a 1-unit y via the alternating series, capped-precision sound.

    Terms (y-1)^k/k have valuation >= k*v(y-1) - v_p(k); we sum until that
    bound clears the working absolute precision with margin.
    """
    K = y.field
    t = y - 1
    if t.is_exact_zero():
        return K.zero()
    v = t.valuation()
    if not (v > 0):
        raise PrecisionExhausted("log series argument is not a 1-unit at this precision")
    target = t.abs_prec()
    acc = K.zero()
    power = t
    k = 1
    while True:
        term = power * K.coerce(Fraction((-1) ** (k + 1), k))
        acc = acc + term
        k += 1
        if k * v - _logp_bound(k, K.p) > target + 4:
            break
        power = power * t
        if k > 8 * int(target) * max(1, K.e_abs) + 64:
            raise PrecisionExhausted("log series did not settle")
    return acc


def padic_log(x, branch):
    """Extended logarithm: log(x) = v(x)*lambda + log(unit part)/m.

    m = e*(q-1), doubled when p = 2, makes y = x^m * p^(-v(x)*m) a 1-unit.
    Additivity log(xy) = log(x) + log(y) holds to tracked precision.
    """
    K = x.field
    if x.is_zeroish():
        raise ZeroArgument("log of (indistinguishable-from-)zero")
    v = x.valuation()
    q = K.residue.size
    m = K.e_abs * (q - 1)
    if K.p == 2:
        m *= 2
    vm = v * m
    if vm.denominator != 1:
        raise PrecisionExhausted("valuation %s not resolved by ramification" % (v,))
    k = vm.numerator
    pw = Fraction(1, K.p ** k) if k >= 0 else Fraction(K.p ** (-k))
    y = (x ** m) * K.coerce(pw)
    logy = _one_unit_log(y)
    out = logy * K.coerce(Fraction(1, m))
    if not branch.lam.is_exact_zero() and v != 0:
        out = out + K.coerce(branch.lam) * K.coerce(v)
    return out


def teichmueller(x):
    """The (q-1)-th root of unity with the same reduction as the unit x."""
    K = x.field
    if x.is_zeroish() or x.valuation() != 0:
        raise ZeroArgument("Teichmueller lift needs a unit")
    q = K.residue.size
    y = x
    for _ in range(4 * int(x.abs_prec() * K.e_abs) + 8):
        y2 = y ** q
        if (y2 - y).is_zeroish():
            return y2
        y = y2
    raise PrecisionExhausted("Teichmueller iteration did not settle")


def assert_equal(x, y, target_prec):
    """Toolkit-wide equality: v(x-y) exceeds the common scale by target_prec pi-digits.

    The common scale is the smaller valuation among the arguments that carry
    significant digits (zero at any precision carries none, scale 0).
    """
    K = x.field
    y = K.coerce(y)
    d = x - y
    if d.is_exact_zero():
        return True
    scales = [v.valuation() for v in (x, y) if v.known_nonzero()]
    scale = min(scales) if scales else Fraction(0)
    dv = d.abs_prec() if d.is_zeroish() else d.valuation()
    return dv - scale >= Fraction(target_prec, K.e_abs)
