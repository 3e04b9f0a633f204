"""Newton polygons, Hensel lifting, root splitting towers, extensions, embeddings.

Everything here works over the pure-step tower fields of `element.py`.  The
central driver `splitting_roots` finds all roots of a monic polynomial,
growing the field by unramified or Eisenstein steps as needed (depth <= 2,
bounded absolute degree), and returns the roots expressed in the final field.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import (
    NoSplitting,
    PrecisionExhausted,
    ReduciblePolynomial,
    SplittingFieldTooLarge,
    UnsupportedExtension,
)
from . import poly as P
from . import residue as R
from .element import ExtField, ExtNum, Qp, QpNum


# ---------------------------------------------------------------------------
# Newton polygon


def _pival(K, c):
    """pi-adic valuation bound of a coefficient (integer for known-nonzero)."""
    v = c.valuation() * K.e_abs
    if v.denominator != 1:
        raise PrecisionExhausted("coefficient valuation not resolved")
    return v.numerator


def newton_polygon_ex(K, f):
    """Lower polygon of monic f: (segments, left_cluster).

    Segments are (root_pi_valuation, count) left to right over the certified
    coefficients.  When the low coefficients are all zero at precision, they
    describe `left_cluster = (j, radius)`: j roots of pi-valuation >= radius,
    not further resolvable.  Zero-at-precision coefficients elsewhere only
    contribute absolute-precision bounds; if a bound could cut below the
    certified hull the polygon is undecidable and PrecisionExhausted rises.
    """
    d = P.pdeg(f)
    pts = []
    bounds = []
    for i, c in enumerate(f):
        if c.known_nonzero():
            pts.append((i, _pival(K, c)))
        elif not c.is_exact_zero():
            bounds.append((i, c.abs_prec() * K.e_abs))
    if not pts or pts[-1][0] != d:
        raise PrecisionExhausted("leading coefficient not certified nonzero")
    # lower convex hull, scanning by increasing i
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x2) >= (pt[1] - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    for i, b in bounds:
        # inside the certified range, a bound may not cut below the hull
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= i <= x2 and x1 != x2:
                hull_y = Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (i - x1)
                if Fraction(b) < hull_y:
                    raise PrecisionExhausted(
                        "Newton polygon undecidable: O-term at degree %d" % i
                    )
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    cluster = None
    j, yj = hull[0]
    if j > 0:
        radius = None
        for i, b in bounds:
            if i < j:
                r = Fraction(Fraction(b) - yj, j - i)
                radius = r if radius is None else min(radius, r)
        if radius is None:
            raise PrecisionExhausted("low coefficients vanished without bounds")
        if segs and radius <= segs[0][0]:
            raise PrecisionExhausted(
                "unresolved low coefficients touch the certified polygon"
            )
        cluster = (j, radius)
    return segs, cluster


def newton_polygon(K, f):
    """Strict polygon: the left cluster case is rejected as undecidable."""
    segs, cluster = newton_polygon_ex(K, f)
    if cluster is not None:
        raise PrecisionExhausted(
            "constant coefficients indistinguishable from zero; polygon undecidable"
        )
    return segs


# ---------------------------------------------------------------------------
# Hensel lifting of a coprime residue factorization


def _lift_poly(K, fbar, prec=None):
    return P.trim([K.lift_res(c, prec) for c in fbar])


def hensel_split(K, f, gbar, hbar):
    """Lift f = g*h from a coprime monic residue factorization; f monic integral.

    Linear lifting: at pi-level k the correction (dg, dh) solves
    dg*hbar + dh*gbar = (f - g*h)/pi^k over the residue field, with exact
    degree control (dh = s*e mod hbar, dg the exact quotient by hbar).
    """
    kres = K.residue
    d, s, _t = R.poly_ext_gcd(kres, gbar, hbar)
    if d != [kres.one()]:
        raise ValueError("residue factors are not coprime")
    g = P.pmonic(K, _lift_poly(K, gbar, prec=K.prec + 8))
    h = P.pmonic(K, _lift_poly(K, hbar, prec=K.prec + 8))
    deg_g, deg_h = P.pdeg(g), P.pdeg(h)
    pi = K.uniformizer()
    pik = pi  # pi^k for the current level
    for k in range(1, 4 * K.prec + 16):
        e = P.psub(K, f, P.pmul(K, g, h))
        done = all(c.is_zeroish() for c in e)
        lvl = min((c.abs_prec() for c in e), default=None)
        if not done and lvl is not None and Fraction(k, K.e_abs) >= lvl:
            done = True  # corrections below the error's own precision floor
        if done:
            # cap the factors at the level the product actually matches
            if e and lvl is not None:
                g = [c.cap_abs(lvl) for c in g]
                h = [c.cap_abs(lvl) for c in h]
                g[-1] = K.one(prec=K.prec + 8)
                h[-1] = K.one(prec=K.prec + 8)
            return g, h
        piinv = pik.inv()
        ebar = []
        for c in e:
            c = c * piinv
            if c.known_nonzero() and c.valuation() < 0:
                raise PrecisionExhausted("Hensel correction below expected level")
            ebar.append(K.reduce(c) if not (c.is_zeroish() and c.abs_prec() <= 0) else kres.zero())
        ebar = R.poly_trim(kres, ebar)
        _q, dh = R.poly_divmod(kres, R.poly_mul(kres, s, ebar), hbar)
        dg, rem = R.poly_divmod(
            kres, R.poly_sub(kres, ebar, R.poly_mul(kres, gbar, dh)), hbar
        )
        if rem:
            raise PrecisionExhausted("Hensel correction failed to divide")
        g = P.padd(K, g, P.pscale(K, _lift_poly(K, dg, prec=K.prec + 8), pik))
        h = P.padd(K, h, P.pscale(K, _lift_poly(K, dh, prec=K.prec + 8), pik))
        if P.pdeg(g) != deg_g or P.pdeg(h) != deg_h:
            raise PrecisionExhausted("Hensel factor degree drifted")
        pik = pik * pi
    raise PrecisionExhausted("Hensel lifting did not converge")


# ---------------------------------------------------------------------------
# splitting driver


class _Split:
    def __init__(self, K, allow_extend, max_abs_degree):
        self.K = K
        self.allow_extend = allow_extend
        self.max_abs_degree = max_abs_degree
        self.roots = []  # (element of current field, multiplicity)
        self.dropped = 0  # degree of factors living outside the field (extend disabled)

    def field_degree(self, K):
        return K.e_abs * K.f_abs

    def extend(self, mod_tail, kind, label):
        K2 = ExtField(self.K, mod_tail, kind, label=label)
        if self.field_degree(K2) > self.max_abs_degree:
            raise SplittingFieldTooLarge(
                "splitting needs degree > %d over Q_p" % self.max_abs_degree
            )
        self.roots = [(K2.coerce(r), m) for r, m in self.roots]
        self.K = K2
        return K2

    def work(self, f, depth=0):
        K = self.K
        f = P.trim([K.coerce(c) for c in f])
        if depth > 8 * self.K.prec + 48:
            raise PrecisionExhausted("root splitting recursion exceeded precision budget")
        if P.pdeg(f) <= 0:
            return
        f = P.pmonic(K, f)
        if P.pdeg(f) == 1:
            self.roots.append((-f[0], 1))
            return
        # factor out exact zeros at t = 0
        k0 = 0
        while k0 < len(f) - 1 and f[k0].is_exact_zero():
            k0 += 1
        if k0:
            self.roots.append((K.zero(), k0))
            self.work(f[k0:], depth + 1)
            return
        d = P.pdeg(f)
        if all(c.is_zeroish() for c in f[:d]):
            # every root sits below the precision radius: one multiple root at 0,
            # known to the radius the bounds support
            vmin = min(c.abs_prec() / (d - i) for i, c in enumerate(f[:d]))
            self.roots.append((K.zeroish(vmin), d))
            return
        segs, cluster = newton_polygon_ex(K, f)
        if cluster is not None or len(segs) > 1:
            # split at the smallest certified slope; an unresolved low cluster
            # reduces to the residue power u^k and splits off with it
            self._split_multi_slope(f, segs, depth)
            return
        slope, count = segs[0]
        a, b = slope.numerator, slope.denominator
        if b == 1:
            self._slope_zero_stage(f, a, depth)
        else:
            self._ramified_stage(f, a, b, depth)

    # -- multiple slopes: split off the smallest-slope piece ---------------
    def _split_multi_slope(self, f, segs, depth):
        K = self.K
        smin = min(s for s, _ in segs)
        if smin.denominator != 1:
            # make the smallest slope integral first
            self._resolve_ramification(f, smin.denominator, depth)
            return
        a = smin.numerator
        pi = K.uniformizer()
        g = P.pmonic(K, P.pscale_var(K, f, pi ** a)) if a else list(f)
        kres = K.residue
        gbar = [K.reduce(c) for c in g]
        gbar = R.poly_trim(kres, gbar)
        k0 = 0
        while k0 < len(gbar) and kres.is_zero(gbar[k0]):
            k0 += 1
        rho = gbar[k0:]
        if k0 == 0 or not rho:
            raise PrecisionExhausted("slope split lost its polygon structure")
        xk = [kres.zero()] * k0 + [kres.one()]
        g_hi, g_lo = hensel_split(K, g, xk, rho)
        for piece in (g_hi, g_lo):
            back = P.pmonic(K, P.pscale_var(K, piece, pi.inv() ** a)) if a else piece
            self.work(back, depth + 1)

    # -- single integer slope -> residue factorization ---------------------
    def _slope_zero_stage(self, f, a, depth):
        K = self.K
        pi = K.uniformizer()
        g = P.pmonic(K, P.pscale_var(K, f, pi ** a)) if a else list(f)
        kres = K.residue
        gbar = R.poly_trim(kres, [K.reduce(c) for c in g])
        if len(gbar) != len(g):
            raise PrecisionExhausted("residue polynomial degenerated")
        factors = R.factor_poly(kres, gbar, seed=len(gbar))
        unscale = (lambda h: P.pmonic(K, P.pscale_var(K, h, pi.inv() ** a))) if a else (lambda h: h)
        if len(factors) >= 2:
            phi, m = factors[0]
            gbar1 = R.poly_pow(kres, phi, m)
            gbar2 = R.poly_divmod(kres, gbar, gbar1)[0]
            g1, g2 = hensel_split(K, g, gbar1, gbar2)
            self.work(unscale(g1), depth + 1)
            self.work(unscale(g2), depth + 1)
            return
        phi, m = factors[0]
        if len(phi) == 2:
            # single residue root of multiplicity m = deg g: center the cluster
            # at the root of the (m-1)-st derivative (linear in u), which lands
            # exactly on a true m-fold root -- unless p divides into the
            # derivative coefficients, in which case fall back to the lifted
            # residue root, which always advances one pi-level
            lift = K.lift_res(kres.neg(phi[0]), prec=K.prec + 8)
            gm = g
            for _ in range(m - 1):
                gm = P.pderiv(K, gm)
            r = None
            if len(gm) == 2 and gm[1].known_nonzero():
                cand = -gm[0] * gm[1].inv()
                diff = cand - lift
                if diff.is_zeroish() or diff.valuation() > 0:
                    r = cand
            if r is None:
                r = lift
            shifted = P.pshift_var(K, g, r)
            n0 = len(self.roots)
            self.work(shifted, depth + 1)
            K2 = self.K
            r2, pi2 = K2.coerce(r), K2.coerce(pi)
            for idx in range(n0, len(self.roots)):
                rt, mm = self.roots[idx]
                back = r2 + rt
                if a:
                    back = back * pi2 ** a
                self.roots[idx] = (back, mm)
            return
        # irreducible residue factor of degree >= 2: unramified extension
        if not self.allow_extend:
            self.dropped += P.pdeg(f)
            return
        self.extend(_lift_poly(K, phi, prec=K.prec + 8)[:-1], "unramified",
                    "unram-deg%d" % (len(phi) - 1))
        self.work(f, depth + 1)

    # -- single fractional slope a/b ---------------------------------------
    def _ramified_stage(self, f, a, b, depth):
        K = self.K
        d = P.pdeg(f)
        if b == d:
            q, r = divmod(a, b)
            pi = K.uniformizer()
            g = P.pmonic(K, P.pscale_var(K, f, pi ** q)) if q else list(f)
            if r == 1:
                if not self.allow_extend:
                    self.dropped += d
                    return
                K2 = self.extend([c for c in g[:-1]], "eisenstein", "eis-deg%d" % d)
                x = K2.gen()
                self.roots.append((x * K2.coerce(pi) ** q if q else x, 1))
                quot, rem = P.pdivmod(K2, [K2.coerce(c) for c in g], [-x, K2.one(prec=K2.prec + 8)])
                if any(not c.is_zeroish() for c in rem):
                    raise PrecisionExhausted("generator does not annihilate its polynomial")
                back = P.pmonic(K2, P.pscale_var(K2, quot, K2.coerce(pi).inv() ** q)) if q else quot
                self.work(back, depth + 1)
                return
            raise UnsupportedExtension(
                "totally ramified step with slope %d/%d is outside scope" % (a, b)
            )
        # fractional slope on a proper piece: resolve ramification first
        self._resolve_ramification(f, b, depth)

    def _resolve_ramification(self, f, b, depth):
        K = self.K
        if not self.allow_extend:
            self.dropped += P.pdeg(f)
            return
        if b != 2:
            raise SplittingFieldTooLarge("ramification index %d resolution not supported" % b)
        if K.p == 2:
            raise UnsupportedExtension("wild ramified splitting at p=2 is outside scope")
        K2 = self.extend([-K.uniformizer(), K.zero()], "eisenstein", "ramified-resolver")
        self.work([K2.coerce(c) for c in f], depth + 1)


def newton_refine(K, f, x0, steps=60):
    """Refine a simple-root approximation by Newton iteration; returns best x."""
    x = x0
    df = P.pderiv(K, f)
    for _ in range(steps):
        fx = P.peval(K, f, x)
        if fx.is_zeroish():
            return x
        dfx = P.peval(K, df, x)
        if not dfx.known_nonzero():
            return x
        step = fx * dfx.inv()
        if not step.known_nonzero():
            return x
        x = x - step
    return x


def splitting_roots(f, K, allow_extend=True, max_abs_degree=8):
    """All roots of monic f, in a pure-step tower over K.

    Returns (roots, field): roots is a list of (element, multiplicity) in
    `field`; with allow_extend=False only the K-rational roots are returned.
    Multiple roots come back at the radius blind splitting supports; a
    derivative Newton pass then recovers full precision when the root really
    is multiple (rather than an unresolved cluster).
    """
    st = _Split(K, allow_extend, max_abs_degree)
    st.work(P.pcoerce(K, f))
    L = st.K
    fL = P.pcoerce(L, f)
    out = []
    for r, m in st.roots:
        if m >= 2:
            g = fL
            for _ in range(m - 1):
                g = P.pderiv(L, g)
            cand = newton_refine(L, g, _center(L, r))
            # the refined root is only certified to the radius the derivative
            # polynomial can see: |cand - true| <= |g(cand)| / |g'(cand)|
            gc = P.peval(L, g, cand)
            dgc = P.peval(L, P.pderiv(L, g), cand)
            if gc.is_zeroish() and dgc.known_nonzero():
                cand = cand.cap_abs(gc.abs_prec() - dgc.valuation())
                if _strictly_better(L, fL, cand, r):
                    r = cand
        out.append((r, m))
    return out, L


def _center(L, r):
    """A full-precision representative of the disc a capped root describes."""
    if isinstance(r, QpNum):
        if r.unit == 0:
            return L.zero() if isinstance(L, Qp) else L.coerce(0)
        return QpNum(r.field, r.ord, r.unit, max(r.rel, r.field.prec + 8))
    return ExtNum(r.field, tuple(_center(r.field.base, c) for c in r.coeffs))


def _strictly_better(L, f, cand, old):
    fc = P.peval(L, f, cand)
    if not fc.is_zeroish():
        return False
    rad_new = cand.abs_prec()
    rad_old = old.abs_prec()
    return (cand - old).is_zeroish() and rad_new >= rad_old


def roots_in_field(f, K):
    roots, _ = splitting_roots(f, K, allow_extend=False)
    return roots


# ---------------------------------------------------------------------------
# extensions and embeddings


def make_extension(base, poly):
    """Build base[x]/(poly) as a certified pure step.

    poly: monic, integral coefficients.  Raises ReduciblePolynomial when the
    Newton polygon plus residue factorization exhibit a factorization, and
    UnsupportedExtension for irreducible-but-mixed (e>1 and f>1) inputs,
    which must be built as explicit towers.
    """
    f = P.pcoerce(base, poly)
    if not f or not (f[-1] - 1).is_zeroish():
        raise ValueError("defining polynomial must be monic")
    for c in f:
        if c.known_nonzero() and c.valuation() < 0:
            raise ValueError("defining polynomial must have integral coefficients")
    d = P.pdeg(f)
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d == 1:
        return base
    shift = base.zero()
    scale = base.one(prec=base.prec + 8)
    g = list(f)
    pi = base.uniformizer()
    for _ in range(4 * base.prec + 16):
        segs = newton_polygon(base, g)
        if len(segs) > 1:
            raise ReduciblePolynomial("Newton polygon has %d slopes" % len(segs))
        slope, _count = segs[0]
        a, b = slope.numerator, slope.denominator
        if b > 1:
            if b != P.pdeg(g):
                raise UnsupportedExtension("mixed ramification: build this as a tower")
            q, r = divmod(a, b)
            if q:
                g = P.pmonic(base, P.pscale_var(base, g, pi ** q))
                scale = scale * pi ** q
            if r != 1:
                raise UnsupportedExtension("slope %d/%d generator not supported" % (a, b))
            return ExtField(base, g[:-1], "eisenstein",
                            label="eis-deg%d" % P.pdeg(g),
                            minimal_poly=tuple(f), gen_affine=(shift, scale))
        if a > 0:
            g = P.pmonic(base, P.pscale_var(base, g, pi ** a))
            scale = scale * pi ** a
        kres = base.residue
        gbar = R.poly_trim(kres, [base.reduce(c) for c in g])
        if R.is_irreducible(kres, gbar):
            return ExtField(base, g[:-1], "unramified",
                            label="unram-deg%d" % P.pdeg(g),
                            minimal_poly=tuple(f), gen_affine=(shift, scale))
        factors = R.factor_poly(kres, gbar)
        if len(factors) >= 2 or factors[0][1] == 1:
            raise ReduciblePolynomial("residue polynomial factors")
        phi, m = factors[0]
        if len(phi) > 2:
            raise UnsupportedExtension("mixed ramification: build this as a tower")
        r0 = base.lift_res(kres.neg(phi[0]), prec=base.prec + 8)
        g = P.pshift_var(base, g, r0)
        shift = shift + scale * r0
    raise PrecisionExhausted("extension analysis did not settle")


class Embedding:
    """A field map fixing the ground field, defined by generator images."""

    def __init__(self, source, target, gen_image, base_map=None):
        self.source = source
        self.target = target
        self.gen_image = gen_image
        self.base_map = base_map

    def __call__(self, x):
        x = self.source.coerce(x)
        if isinstance(x, QpNum):
            return self.target.coerce(x)
        acc = self.target.zero()
        for c in reversed(x.coeffs):
            cc = self.base_map(c) if self.base_map else self.target.coerce(c)
            acc = acc * self.gen_image + cc
        return acc

    def __repr__(self):
        return "Embedding(%r -> %r)" % (self.source.label if isinstance(self.source, ExtField) else self.source, self.target)


def embeddings(K1, target):
    """All embeddings of K1 into target fixing K1's ground field Q_p.

    Exactly [K1 : Q_p] maps exist when target splits K1's defining data;
    otherwise NoSplitting is raised.
    """
    if isinstance(K1, Qp):
        if target.p != K1.p:
            raise NoSplitting("different primes")
        return [Embedding(K1, target, None)]
    base_embs = embeddings(K1.base, target)
    out = []
    for be in base_embs:
        modulus = [be(c) for c in K1.mod_tail] + [target.one(prec=target.prec + 8)]
        roots = roots_in_field(modulus, target)
        for r, m in roots:
            for _ in range(m):
                out.append(Embedding(K1, target, r, base_map=be))
    expected = _abs_degree(K1)
    if len(out) != expected:
        raise NoSplitting(
            "found %d embeddings of a degree-%d field" % (len(out), expected)
        )
    return out


def _abs_degree(K):
    return K.e_abs * K.f_abs


def trace(x, K1, K0):
    """Trace of x in K1 down to K0 along the tower."""
    K = K1
    while K is not K0:
        if isinstance(K, Qp):
            raise ValueError("K0 is not below K1 in the tower")
        x = _trace_step(K.coerce(x))
        K = K.base
    return x


def norm(x, K1, K0):
    K = K1
    while K is not K0:
        if isinstance(K, Qp):
            raise ValueError("K0 is not below K1 in the tower")
        x = _norm_step(K.coerce(x))
        K = K.base
    return x


def _trace_step(x):
    M = x.mult_matrix()
    acc = x.field.base.zero()
    for i in range(len(M)):
        acc = acc + M[i][i]
    return acc


def _norm_step(x):
    M = x.mult_matrix()
    n = len(M)
    # Leibniz expansion: exact, no pivoting decisions needed for n <= 4
    from itertools import permutations

    acc = x.field.base.zero()
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = x.field.base.one(prec=x.field.base.prec + 8)
        for i in range(n):
            term = term * M[i][perm[i]]
        acc = acc + (term if sign > 0 else -term)
    return acc
