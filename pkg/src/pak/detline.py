"""Log functions on determinants of lines over extension fields, trace duality,
and the codifferent/Euler-characteristic computation for quadratic orders."""

from __future__ import annotations

from fractions import Fraction

from .errors import NonMonogenic, NonSupported, PrecisionExhausted
from .padic import ExtField, embeddings, make_extension, padic_log, trace
from .padic import poly as P


def certify_in_base(x, K):
    """Certify an element of a tower lies in K and hand it back there."""
    while x.field is not K:
        if not isinstance(x.field, ExtField):
            raise PrecisionExhausted("element is not over the requested base")
        for c in x.coeffs[1:]:
            if not c.is_zeroish():
                raise PrecisionExhausted("value failed base-field certification")
        x = x.coeffs[0]
    return x


def _det(field, M):
    from itertools import permutations

    n = len(M)
    acc = field.zero()
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = field.one(prec=field.prec + 8)
        for i in range(n):
            term = term * M[i][perm[i]]
        acc = acc + (term if sign > 0 else -term)
    return acc


def det_K_log(Kp, K, beta, x, log_x, branch):
    """log on det_K(V) for a K'-line V with a log defined over K.

    For a K'-basis x of V and a K-basis beta of K', the wedge of (beta_i x)
    has log equal to log(det(sigma_j(beta_i))) + tr_{K'/K}(log x); the result
    is certified to lie in K.
    """
    if Kp is K:
        return log_x
    embs = embeddings(Kp, Kp)
    M = [[e(b) for e in embs] for b in beta]
    d = _det(Kp, M)
    val = padic_log(d, branch) + Kp.coerce(trace(log_x, Kp, K))
    return certify_in_base(val, K)


class DeterminantLine:
    """The K-line det(U) (x) det(V)^(-1) of two K'-lines, with its log."""

    def __init__(self, K, Kp, tr_shift):
        self.K = K
        self.Kp = Kp
        self.tr_shift = tr_shift

    def log(self, y, branch):
        """Log at the element with beta-coordinate y in K^x."""
        return padic_log(self.K.coerce(y), branch) - self.tr_shift


def det_quotient_log(Kp, K, c, branch=None):
    """Given an isomorphism with log_V o alpha = log_U + c, build the K-line log.

    The result is log o beta - tr_{K'/K}(c); re-choosing alpha by c' moves c
    by log(c') and beta by Norm(c'), which cancel.
    """
    tr_c = certify_in_base(Kp.coerce(trace(Kp.coerce(c), Kp, K)), K)
    return DeterminantLine(K, Kp, tr_c)


def gram_matrix(Kp, K, beta):
    return [
        [certify_in_base(Kp.coerce(trace(bi * bj, Kp, K)), K) for bj in beta]
        for bi in beta
    ]


def trace_dual_basis(Kp, K, beta):
    """The basis dual to beta under the trace form, via the inverse Gram matrix."""
    from .padic import solve_linear

    G = gram_matrix(Kp, K, beta)
    n = len(beta)
    dual = []
    for k in range(n):
        rhs = [K.one(prec=K.prec + 8) if i == k else K.zero() for i in range(n)]
        col = solve_linear(K, G, rhs)
        acc = Kp.zero()
        for cij, bj in zip(col, beta):
            acc = acc + Kp.coerce(cij) * bj
        dual.append(acc)
    return dual


def trace_dual_check(Kp, K, beta, branch):
    """det-log of a basis plus det-log of its trace dual; must vanish."""
    if Kp is K:
        return K.zero()
    dual = trace_dual_basis(Kp, K, beta)
    zero_log = K.zero()
    s = det_K_log(Kp, K, beta, Kp.one(prec=Kp.prec + 8), zero_log, branch)
    s2 = det_K_log(Kp, K, dual, Kp.one(prec=Kp.prec + 8), zero_log, branch)
    return s + s2


# ---------------------------------------------------------------------------
# quadratic orders: codifferent, discriminant degree, Euler characteristic


class QuadraticOrder:
    """The maximal order of Q(sqrt(d)), d squarefree, presented monogenically."""

    def __init__(self, d):
        if d in (0, 1):
            self.trivial = True
            self.d = d
            return
        self.trivial = False
        if _has_square_factor(d):
            raise NonMonogenic("d must be squarefree to present the maximal order")
        self.d = d
        if d % 4 == 1:
            # alpha = (1+sqrt(d))/2, minimal poly x^2 - x + (1-d)/4
            self.b, self.c = -1, (1 - d) // 4
        else:
            self.b, self.c = 0, -d
        self.disc = self.b * self.b - 4 * self.c

    def minimal_poly(self, K):
        return [K.from_int(self.c), K.from_int(self.b), K.one(prec=K.prec + 8)]

    def gram_dual_is_codifferent(self):
        """Certify W = (1/g'(alpha)) O_L against the trace-dual Z-basis of O_L.

        Exact rational arithmetic: both lattices are expressed on (1, alpha)
        and must agree up to a GL_2(Z) change of basis.
        """
        b, c = self.b, self.c
        G = [[Fraction(2), Fraction(-b)], [Fraction(-b), Fraction(b * b - 2 * c)]]
        det = G[0][0] * G[1][1] - G[0][1] * G[1][0]
        dual = [[G[1][1] / det, -G[0][1] / det], [-G[1][0] / det, G[0][0] / det]]
        # w = 1/(2 alpha + b) = (2 conj(alpha) + b)/N(2 alpha + b) = (-b - 2 alpha)/(-disc)
        # on coordinates (1, alpha); w*alpha uses alpha^2 = -b alpha - c
        nw = Fraction(-self.disc)
        w1 = [Fraction(-b) / nw, Fraction(-2) / nw]
        wa = [Fraction(2 * c) / nw, Fraction(b) / nw]
        # dual basis must be M * (w, w*alpha) with M in GL_2(Z)
        W = [w1, wa]
        detW = W[0][0] * W[1][1] - W[0][1] * W[1][0]
        Winv = [[W[1][1] / detW, -W[0][1] / detW], [-W[1][0] / detW, W[0][0] / detW]]
        M = [[sum(dual[i][k] * Winv[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        ok = all(m.denominator == 1 for row in M for m in row)
        detM = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        return ok and abs(detM) == 1

    def norm_of_codifferent_generator(self):
        """N(1/g'(alpha)) = -1/disc as an exact rational."""
        return Fraction(-1, self.disc)


def codifferent_and_chi(order, char, branch):
    """Degree of the dualizing lattice and the Euler characteristic it forces.

    deg W assembles the determinant chain directly: the finite places see the
    fractional ideal generated by N(w), the places above p see
    sum_v tr(log_v w) - log_p N(w); chi(A) = -deg(W)/2.
    """
    K = char.field
    p = K.p
    if order.trivial:
        zero = K.zero()
        return {"deg_W": zero, "d_E": zero, "chi": zero}
    if order.disc % p == 0:
        raise NonSupported("quadratic field ramified at p is outside scope")
    if not order.gram_dual_is_codifferent():
        raise NonMonogenic("codifferent generator check failed")
    nw = order.norm_of_codifferent_generator()
    # finite part: - sum_q v_q(N(w)) * ell_q(pi_q)
    fin = K.zero()
    for q, v in _factor_rational(nw):
        if q == p:
            raise NonSupported("codifferent meets p; ramified case excluded")
        fin = fin + char.finite_value(q) * v
    # p-part: the determinant-line log at the canonical trivialization
    g = order.minimal_poly(K)
    from .padic.factor import roots_in_field

    rts = roots_in_field(g, K)
    logs = K.zero()
    if len(rts) == 2:
        for r, _m in rts:
            w = (r * 2 + order.b).inv()
            logs = logs + padic_log(w, branch)
    elif len(rts) == 0:
        Kp2 = make_extension(K, g)
        alpha = Kp2.user_gen()
        w = (alpha * 2 + order.b).inv()
        logs = certify_in_base(Kp2.coerce(trace(padic_log(w, branch), Kp2, K)), K)
    else:
        raise NonSupported("unexpected splitting of the quadratic at p")
    p_part = char.t_apply(logs - padic_log(K.from_fraction(nw), branch))
    deg_w = p_part - fin
    half = K.coerce(Fraction(-1, 2))
    return {"deg_W": deg_w, "d_E": deg_w, "chi": deg_w * half}


def _has_square_factor(d):
    d = abs(d)
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return True
        k += 1
    return False


def _factor_rational(fr):
    out = {}
    for n, sign in ((fr.numerator, 1), (fr.denominator, -1)):
        n = abs(n)
        k = 2
        while k * k <= n:
            while n % k == 0:
                out[k] = out.get(k, 0) + sign
                n //= k
            k += 1
        if n > 1:
            out[n] = out.get(n, 0) + sign
    return sorted(out.items())
