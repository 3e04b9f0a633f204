"""Global intersection bookkeeping over F = Q: idele class characters,
divisors with fiber parts above p, the intersection pairing, degrees of
metrized lines, chi bookkeeping, discriminants, adjunction and the
Riemann-Roch delta/normalization checkers.

Synthetic surfaces carry horizontal sections with input finite intersection
multiplicities and input self-intersections, one Green table above p, a
designated canonical-class divisor and a base chi value.  Generators solve
the per-section adjunction relation so every derived identity holds exactly;
the checkers then reassemble both sides of each identity through independent
code paths.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    MissingIngredient,
    NonSupported,
    OverlappingSupport,
    UnknownPlace,
)
from .green import GreenTable
from .padic import LogBranch, padic_log


def _vq(fr, q):
    fr = Fraction(fr)
    v = 0
    n = fr.numerator
    while n and n % q == 0:
        n //= q
        v += 1
    d = fr.denominator
    while d % q == 0:
        d //= q
        v -= 1
    return v


class IdeleCharacter:
    """ell: ideles mod Q^x -> Q_p, as ell_q(pi_q) data away from p and t o log at p."""

    def __init__(self, field, finite_values=None, t=1, branch=None, standard=False):
        self.field = field
        self.finite_values = dict(finite_values or {})
        self.t = Fraction(t)
        self.branch = branch or LogBranch.iwasawa(field)
        self.standard = standard

    @classmethod
    def make_standard(cls, field):
        """t = id, lambda = 0, ell_q(q) = -log_p(q): the class condition on Q^x."""
        return cls(field, t=1, standard=True)

    def finite_value(self, q):
        if q == self.field.p:
            raise UnknownPlace("q = p is not a finite place of the character")
        if q in self.finite_values:
            return self.finite_values[q]
        if self.standard:
            v = -padic_log(self.field.from_int(q), self.branch)
            self.finite_values[q] = v
            return v
        raise UnknownPlace("no character value at q = %d" % q)

    def ell_finite(self, fr):
        """Sum over q != p of v_q(fr) * ell_q(pi_q)."""
        fr = Fraction(fr)
        acc = self.field.zero()
        for q in _prime_support(fr):
            if q == self.field.p:
                continue
            acc = acc + self.finite_value(q) * _vq(fr, q)
        return acc

    def t_apply(self, x):
        return self.field.coerce(x) * self.field.coerce(self.t)

    def log_p(self, fr):
        return padic_log(self.field.from_fraction(Fraction(fr)), self.branch)

    def t_log(self, fr):
        return self.t_apply(self.log_p(fr))

    def unit_ramified(self):
        """Whether t o log_p is nonvanishing on units (recorded, not required)."""
        u = 1 + self.field.p
        return self.t_log(Fraction(u)).known_nonzero()


def _prime_support(fr):
    out = set()
    for n in (abs(fr.numerator), fr.denominator):
        k = 2
        while k * k <= n:
            if n % k == 0:
                out.add(k)
                while n % k == 0:
                    n //= k
            k += 1
        if n > 1:
            out.add(n)
    return sorted(out)


def validate_character(char, generators):
    """For each f in Q^x: sum_q ell_q(f) + t(log_p f) must vanish."""
    rows = []
    ok = True
    for f in generators:
        f = Fraction(f)
        fin = char.ell_finite(f)
        at_p = char.t_log(f)
        total = fin + at_p
        passed = total.is_zeroish()
        ok = ok and passed
        rows.append(
            {
                "generator": str(f),
                "finite": fin,
                "at_p": at_p,
                "residual": total,
                "ok": passed,
            }
        )
    return {"ok": ok, "rows": rows, "unit_ramified": char.unit_ramified()}


class ArakelovDivisor:
    """finite part: integer combination of section labels; fiber part above p."""

    def __init__(self, finite=(), fiber=None):
        self.finite = {}
        for label, m in dict(finite).items() if isinstance(finite, dict) else finite:
            if m:
                self.finite[label] = self.finite.get(label, 0) + m
        self.finite = {l: m for l, m in self.finite.items() if m}
        self.fiber = fiber  # field element lambda at the place above p, or None

    @classmethod
    def fiber_only(cls, lam):
        return cls((), lam)

    def degree_generic(self, surface):
        return sum(m * surface.sections[l]["deg"] for l, m in self.finite.items())

    def support(self):
        return set(self.finite)

    def __add__(self, other):
        lam = self.fiber
        if other.fiber is not None:
            lam = other.fiber if lam is None else lam + other.fiber
        return ArakelovDivisor(
            list(self.finite.items()) + list(other.finite.items()), lam
        )

    def scale(self, n):
        lam = None if self.fiber is None else self.fiber * n
        return ArakelovDivisor([(l, n * m) for l, m in self.finite.items()], lam)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __repr__(self):
        return "ArDiv(%s%s)" % (
            ", ".join("%s:%d" % (l, m) for l, m in sorted(self.finite.items())),
            "" if self.fiber is None else "; fiber %r" % (self.fiber,),
        )


class SyntheticSurface:
    """Sections over Z with input intersection data and one Green table above p."""

    def __init__(self, field, char, genus, sections, pair_fin, green, omega, chi0, d_section=None):
        self.field = field
        self.char = char
        self.genus = genus
        # sections: label -> {"deg": int, "points": [point labels], "self": value}
        self.sections = sections
        # pair_fin: frozenset({i, j}) -> {q: int}
        self.pair_fin = pair_fin
        self.green = green  # GreenTable on point labels
        self.omega = omega  # ArakelovDivisor of generic degree 2g-2
        self.chi0 = chi0
        self.d_section = dict(d_section or {})  # label -> d(section), default 0

    def d_of_section(self, label):
        return self.d_section.get(label, self.field.zero())

    def points_of(self, D):
        out = []
        for label, m in sorted(D.finite.items()):
            for pt in self.sections[label]["points"]:
                out.append((pt, m))
        return out

    def fin_mult(self, i, j, q):
        key = frozenset((i, j))
        data = self.pair_fin.get(key)
        if data is None:
            return 0
        return data.get(q, 0)

    def finite_places(self):
        qs = set()
        for data in self.pair_fin.values():
            qs |= set(data)
        return sorted(qs)

    # -- the pairing ------------------------------------------------------
    def intersect(self, D, E, allow_self=False):
        """Sum over places of [D,E]_v; needs disjoint generic supports unless
        the self-data inputs are explicitly brought in."""
        shared = D.support() & E.support()
        if shared and not allow_self:
            raise OverlappingSupport("generic supports share %s" % (sorted(shared),))
        acc = self.field.zero()
        # finite places
        for q in self.finite_places():
            m = 0
            for i, ni in D.finite.items():
                for j, mj in E.finite.items():
                    if i == j:
                        continue
                    m += ni * mj * self.fin_mult(i, j, q)
            if m:
                acc = acc + self.char.finite_value(q) * m
        # place above p
        fv = self.field.zero()
        for i, ni in D.finite.items():
            for j, mj in E.finite.items():
                if i == j:
                    fv = fv + self.sections[i]["self"] * (ni * mj)
                    continue
                g = self.field.zero()
                for P in self.sections[i]["points"]:
                    for Q in self.sections[j]["points"]:
                        g = g + self.green.value(P, Q)
                fv = fv + g * (ni * mj)
        if D.fiber is not None:
            fv = fv + D.fiber * E.degree_generic(self)
        if E.fiber is not None:
            fv = fv + E.fiber * D.degree_generic(self)
        return acc + self.char.t_apply(fv)

    def d_infinity(self, E):
        """sum over ordered pairs of distinct points of E of G, t-applied."""
        pts = self.points_of(E)
        acc = self.field.zero()
        for a, (P, m1) in enumerate(pts):
            for b, (Q, m2) in enumerate(pts):
                if a == b:
                    continue
                acc = acc + self.green.value(P, Q) * (m1 * m2)
        return self.char.t_apply(acc)

    def d_of(self, E):
        """d(E) for a reduced horizontal divisor: per-section parts plus the
        finite parts of the pairwise intersections."""
        if any(m != 1 for m in E.finite.values()):
            raise NonSupported("discriminants need reduced horizontal divisors")
        acc = self.field.zero()
        labels = sorted(E.finite)
        for l in labels:
            acc = acc + self.d_of_section(l)
        for a, i in enumerate(labels):
            for j in labels[a + 1 :]:
                for q in self.finite_places():
                    m = self.fin_mult(i, j, q)
                    if m:
                        acc = acc + self.char.finite_value(q) * (2 * m)
        return acc

    # -- chi bookkeeping ---------------------------------------------------
    def chi_of(self, D):
        """chi(O(D)) by the point-addition chain from chi(O_X).

        Each unit step adds or removes one copy of a section s and moves chi
        by the degree of the fiber line, assembled as (D' + s).s with the
        self-term, corrected by the section's own discriminant data.  A fiber
        part lambda scales the starting metric: chi(O(lambda X)) = chi0 +
        (1-g) * t(lambda); the chain's lambda cross-terms supply the rest of
        the determinant scaling rule.
        """
        acc = self.chi0
        cur = ArakelovDivisor((), D.fiber)
        if D.fiber is not None:
            acc = acc + self.char.t_apply(D.fiber * (1 - self.genus))
        for label, mult in sorted(D.finite.items()):
            step = ArakelovDivisor([(label, 1)])
            n = abs(mult)
            for _ in range(n):
                if mult > 0:
                    nxt = cur + step
                    fiber_deg = self.intersect(nxt, step, allow_self=True)
                    half = self.field.coerce(Fraction(1, 2))
                    acc = acc + fiber_deg - (self.d_of_section(label) + self.d_infinity(step)) * half
                    cur = nxt
                else:
                    fiber_deg = self.intersect(cur, step, allow_self=True)
                    half = self.field.coerce(Fraction(1, 2))
                    acc = acc - fiber_deg + (self.d_of_section(label) + self.d_infinity(step)) * half
                    cur = cur - step
        return acc

    def rescaled(self, c):
        """The state after shifting the Green function by c at the place above p.

        Pairings move by c*deg*deg (self-values included); the canonical class
        picks up the fiber shift -c(2g-1); chi0 is untouched.
        """
        c = self.field.coerce(c)
        sections = {}
        for l, data in self.sections.items():
            d2 = dict(data)
            d2["self"] = data["self"] + c * (data["deg"] ** 2)
            sections[l] = d2
        green = self.green.shifted(c)
        om_lam = self.omega.fiber if self.omega.fiber is not None else self.field.zero()
        omega2 = ArakelovDivisor(list(self.omega.finite.items()), om_lam - c * (2 * self.genus - 1))
        return SyntheticSurface(
            self.field, self.char, self.genus, sections, self.pair_fin, green,
            omega2, self.chi0, self.d_section,
        )


def chi_scale(chi_value, chi_geom, alpha, char):
    """Determinant-line response to scaling a metric by alpha: chi += t(chi_geom*alpha)."""
    return chi_value + char.t_apply(alpha * chi_geom)


def lemma_chi_step_check(surface, D, E):
    """Two-path check: the chain value of chi(O(D+E)) against the one-shot
    restriction formula chi(O(D)) + (D+E).E + chi(O_E) - d_infinity(E)/2."""
    half = surface.field.coerce(Fraction(1, 2))
    path1 = surface.chi_of(D + E)
    chiOE = -surface.d_of(E) * half
    path2 = (
        surface.chi_of(D)
        + surface.intersect(D + E, E, allow_self=True)
        + chiOE
        - surface.d_infinity(E) * half
    )
    return path1 - path2


def adjunction_check(surface, E, d_E=None):
    """omega.E + E.E - d(E) - d_infinity(E), with the per-term breakdown."""
    if surface.omega is None:
        raise MissingIngredient("no canonical-class divisor on this surface")
    if d_E is None:
        try:
            d_E = surface.d_of(E)
        except NonSupported as exc:
            raise MissingIngredient("d(E) unavailable: %s" % exc) from exc
    omega_E = surface.intersect(surface.omega, E, allow_self=True)
    EE = surface.intersect(E, E, allow_self=True)
    dinf = surface.d_infinity(E)
    residual = omega_E + EE - d_E - dinf
    return {
        "omega_dot_E": omega_E,
        "E_dot_E": EE,
        "d_E": d_E,
        "d_infinity": dinf,
        "residual": residual,
    }


def rr_delta_check(surface, D, E):
    """Adding horizontal E moves chi(O(D)) - chi(O) and L.(L-omega)/2 equally."""
    half = surface.field.coerce(Fraction(1, 2))
    lhs = surface.chi_of(D + E) - surface.chi_of(D)
    rhs = surface.intersect(D, E, allow_self=True) + surface.intersect(
        E, E, allow_self=True
    ) * half - surface.intersect(surface.omega, E, allow_self=True) * half
    return lhs - rhs


def rr_both_sides(surface, L_div, chi_geom, metric_shift=None):
    """chi(L) - chi(O) and L.(L - omega)/2 computed independently.

    L is O(L_div) with the canonical metric scaled by `metric_shift` (an
    element alpha: log_L = log_canonical + alpha), so chi(L) picks up
    chi_geom * alpha and the Arakelov class picks up alpha on the fiber.
    """
    F = surface.field
    half = F.coerce(Fraction(1, 2))
    alpha = metric_shift if metric_shift is not None else F.zero()
    chi_L = chi_scale(surface.chi_of(L_div), chi_geom, alpha, surface.char)
    lhs = chi_L - surface.chi0
    cl = ArakelovDivisor(
        list(L_div.finite.items()),
        (L_div.fiber if L_div.fiber is not None else F.zero()) + alpha,
    )
    rhs = surface.intersect(cl, cl - surface.omega, allow_self=True) * half
    return lhs, rhs


def rr_rescale_invariance(surface, L_div, c, chi_geom=None):
    """Replay the normalization-shift computation on both sides of RR.

    The fixed metrized line L = O(L_div) keeps its metric while the Green
    function moves by c: relative to the new canonical metric its scaling
    constant is -c*d, so chi(L) responds through the determinant rule while
    its Arakelov class drops c*d off the fiber; the canonical class shifts
    by -c(2g-1).  Returns (delta_lhs, delta_rhs, closed_form).
    """
    F = surface.field
    d = L_div.degree_generic(surface)
    g = surface.genus
    if chi_geom is None:
        chi_geom = d + 1 - g
    lhs1, rhs1 = rr_both_sides(surface, L_div, chi_geom)
    s2 = surface.rescaled(c)
    c = F.coerce(c)
    lhs2, rhs2 = rr_both_sides(s2, L_div, chi_geom, metric_shift=-c * d)
    closed = surface.char.t_apply(-c * Fraction(d * (d + 1 - 2 * g), 2))
    return lhs2 - lhs1, rhs2 - rhs1, closed


def principal_check(surface, D, f_value, iota_p=None, g_principal_at_D=None, fin_mults=None):
    """D.(f) assembled through the ledger and through the character sum.

    f_value is f(D) in Q^x; the ledger path uses supplied (or lemma-derived)
    finite multiplicities <D,(f)>_q, the Green value of the principal divisor
    at D and the iota fiber part; the character path is the class condition.
    Both must vanish and agree.
    """
    F = surface.field
    char = surface.char
    f_value = Fraction(f_value)
    degD = D.degree_generic(surface)
    if iota_p is None:
        iota_p = F.zero()
    if g_principal_at_D is None:
        g_principal_at_D = char.log_p(f_value) - iota_p * degD
    if fin_mults is None:
        fin_mults = {q: _vq(f_value, q) for q in _prime_support(f_value) if q != F.p}
    fin = F.zero()
    for q, m in sorted(fin_mults.items()):
        if m:
            fin = fin + char.finite_value(q) * m
    path_ledger = fin + char.t_apply(g_principal_at_D + iota_p * degD)
    path_character = char.ell_finite(f_value) + char.t_log(f_value)
    return {
        "ledger": path_ledger,
        "character": path_character,
        "agree": (path_ledger - path_character).is_zeroish(),
        "vanishes": path_ledger.is_zeroish() and path_character.is_zeroish(),
    }


class MetrizedOFLine:
    """A metrized Z-line: fractional-ideal data away from p, a log value at p."""

    def __init__(self, field, finite_data, p_log):
        self.field = field
        self.finite_data = {int(q): int(k) for q, k in dict(finite_data).items() if k}
        self.p_log = p_log

    def rebased(self, r):
        """Change the trivialization by multiplication with r in Q^x."""
        r = Fraction(r)
        branch = LogBranch.iwasawa(self.field)
        fin = dict(self.finite_data)
        for q in _prime_support(r):
            if q == self.field.p:
                continue
            fin[q] = fin.get(q, 0) - _vq(r, q)
        vp = _vq(r, self.field.p)
        shift = padic_log(self.field.from_fraction(r), branch)
        return MetrizedOFLine(self.field, fin, self.p_log + shift)


def deg_metrized_line(line, char):
    """t(log at p of theta(1)) minus the ell-weighted finite ideal data."""
    acc = char.t_apply(line.p_log)
    for q, k in line.finite_data.items():
        if k:
            acc = acc - char.finite_value(q) * k
    return acc


def p1_section_multiplicity(sec1, sec2, q):
    """Intersection multiplicity at q of two integral sections (a:b) of P^1 over Z."""
    a, b = sec1
    c, d = sec2
    det = a * d - b * c
    if det == 0:
        raise OverlappingSupport("sections coincide generically")
    return _vq(Fraction(det), q)


# ---------------------------------------------------------------------------
# synthetic state generator


def make_synthetic_surface(field, char, genus, n_sections, rng, qs=(2, 3)):
    """Random internally-consistent surface: the self-intersections solve the
    per-section adjunction relation, so every derived identity holds exactly."""
    labels = ["s%d" % i for i in range(n_sections)]
    wlabels = ["w%d" % i for i in range(max(0, 2 * genus - 2))]
    sections = {}
    for l in labels + wlabels:
        sections[l] = {"deg": 1, "points": ["P_" + l], "self": field.zero()}
    pair_fin = {}
    alllab = labels + wlabels
    for a, i in enumerate(alllab):
        for j in alllab[a + 1 :]:
            pair_fin[frozenset((i, j))] = {q: rng.randint(0, 3) for q in qs}
    entries = []
    pts = ["P_" + l for l in alllab]
    for a, P in enumerate(pts):
        for Q in pts[a + 1 :]:
            entries.append((P, Q, field.from_int(rng.randint(-40, 40))))
    green = GreenTable(field, genus, entries)
    om_fiber = field.from_int(rng.randint(-5, 5))
    omega = ArakelovDivisor([(w, 1) for w in wlabels], om_fiber)
    surface = SyntheticSurface(
        field, char, genus, sections, pair_fin, green, omega,
        field.from_int(rng.randint(-9, 9)),
    )
    # solve self-intersections so per-section adjunction holds:
    # omega.s + s.s = d(s) + d_infinity(s) = 0 for sections over Z, i.e.
    # cross(omega - s, s) + (1 + [s in omega]) * t(self) = 0
    for l in alllab:
        s = ArakelovDivisor([(l, 1)])
        cross = surface.intersect(_without(surface, omega, l), s)
        in_omega = omega.finite.get(l, 0)
        tsc = char.t_apply(field.one(prec=field.prec + 8))
        sval = -cross * tsc.inv() * Fraction(1, 1 + in_omega)
        surface.sections[l]["self"] = sval
    return surface


def _without(surface, D, label):
    return ArakelovDivisor(
        [(l, m) for l, m in D.finite.items() if l != label], D.fiber
    )
