"""Finite-dimensional model of H^1_dR of a curve with a fixed isotropic splitting,
the product-surface Kunneth algebra, and the curvature identities.

Basis order: omega_1..omega_g (holomorphic), then wbar_1..wbar_g (the
complement W).  The cup matrix has tr(wbar_i . omega_j) = delta_ij and both
blocks isotropic.  Scalars default to exact Fractions; any local field works
through the same interface.
"""

from __future__ import annotations

from fractions import Fraction


class FractionScalars:
    @staticmethod
    def zero():
        return Fraction(0)

    @staticmethod
    def one():
        return Fraction(1)

    @staticmethod
    def coerce(x):
        return Fraction(x)

    @staticmethod
    def is_zero(x):
        return x == 0

    @staticmethod
    def inv(x):
        return 1 / Fraction(x)


class FieldScalars:
    """Adapter running the same identities over a local field."""

    def __init__(self, field):
        self.field = field

    def zero(self):
        return self.field.zero()

    def one(self):
        return self.field.one(prec=self.field.prec + 8)

    def coerce(self, x):
        return self.field.coerce(x)

    def is_zero(self, x):
        return x.is_zeroish()

    def inv(self, x):
        return x.inv()


class DeRhamSpace:
    def __init__(self, g, scalars=None):
        if g < 1:
            raise ValueError("genus must be >= 1")
        self.g = g
        self.S = scalars or FractionScalars()
        n = 2 * g
        C = [[self.S.zero() for _ in range(n)] for _ in range(n)]
        for i in range(g):
            C[g + i][i] = self.S.one()
            C[i][g + i] = -self.S.one()
        self.cup = C

    def h1(self, coords):
        return H1Class(self, list(coords))

    def basis_omega(self, i):
        v = [self.S.zero()] * (2 * self.g)
        v[i] = self.S.one()
        return H1Class(self, v)

    def basis_wbar(self, i):
        v = [self.S.zero()] * (2 * self.g)
        v[self.g + i] = self.S.one()
        return H1Class(self, v)

    def cup_trace(self, x, y):
        """tr(x cup y) for H^1 classes."""
        acc = self.S.zero()
        for a, xa in enumerate(x.coords):
            if self.S.is_zero(xa):
                continue
            for b, yb in enumerate(y.coords):
                acc = acc + xa * self.cup[a][b] * yb
        return acc


class H1Class:
    def __init__(self, space, coords):
        self.space = space
        self.coords = list(coords)

    def __add__(self, other):
        return H1Class(self.space, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return H1Class(self.space, [a - b for a, b in zip(self.coords, other.coords)])

    def scale(self, c):
        c = self.space.S.coerce(c)
        return H1Class(self.space, [a * c for a in self.coords])

    def is_zero(self):
        return all(self.space.S.is_zero(a) for a in self.coords)

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None


class HTensorClass:
    """Element of H^1 (x) Omega^1 on the curve: 2g x g coordinate matrix."""

    def __init__(self, space, mat):
        self.space = space
        self.mat = [list(r) for r in mat]

    @classmethod
    def zero(cls, space):
        return cls(
            space,
            [[space.S.zero() for _ in range(space.g)] for _ in range(2 * space.g)],
        )

    def __add__(self, other):
        return HTensorClass(
            self.space,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.mat, other.mat)],
        )

    def __sub__(self, other):
        return HTensorClass(
            self.space,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.mat, other.mat)],
        )

    def scale(self, c):
        c = self.space.S.coerce(c)
        return HTensorClass(self.space, [[a * c for a in r] for r in self.mat])

    def is_zero(self):
        return all(self.space.S.is_zero(a) for r in self.mat for a in r)

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None


class KunnethHTensor:
    """Element of H^1 (x) Omega^1 on the product surface: 4g x 2g matrix.

    H^1 rows: first 2g from the first factor, last 2g from the second;
    Omega^1 columns: first g from the first factor, last g from the second.
    """

    def __init__(self, space, mat):
        self.space = space
        self.mat = [list(r) for r in mat]

    @classmethod
    def zero(cls, space):
        return cls(
            space,
            [[space.S.zero() for _ in range(2 * space.g)] for _ in range(4 * space.g)],
        )

    def __add__(self, other):
        return KunnethHTensor(
            self.space,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.mat, other.mat)],
        )

    def __sub__(self, other):
        return KunnethHTensor(
            self.space,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.mat, other.mat)],
        )

    def scale(self, c):
        c = self.space.S.coerce(c)
        return KunnethHTensor(self.space, [[a * c for a in r] for r in self.mat])

    def is_zero(self):
        return all(self.space.S.is_zero(a) for r in self.mat for a in r)

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None


class H2Kunneth:
    """H^2 of the product: multiples of the two pulled-back top classes plus
    the mixed block (first-factor H^1) cup (second-factor H^1)."""

    def __init__(self, space, top1, top2, mixed):
        self.space = space
        self.top1 = top1
        self.top2 = top2
        self.mixed = [list(r) for r in mixed]

    @classmethod
    def zero(cls, space):
        n = 2 * space.g
        return cls(
            space,
            space.S.zero(),
            space.S.zero(),
            [[space.S.zero() for _ in range(n)] for _ in range(n)],
        )

    def __sub__(self, other):
        return H2Kunneth(
            self.space,
            self.top1 - other.top1,
            self.top2 - other.top2,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.mixed, other.mixed)],
        )

    def is_zero(self):
        S = self.space.S
        return (
            S.is_zero(self.top1)
            and S.is_zero(self.top2)
            and all(S.is_zero(a) for r in self.mixed for a in r)
        )

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None


# ---------------------------------------------------------------------------
# the canonical classes


def mu(space):
    """(1/g) sum wbar_i (x) omega_i."""
    T = HTensorClass.zero(space)
    c = space.S.coerce(Fraction(1, space.g))
    for i in range(space.g):
        T.mat[space.g + i][i] = c
    return T


def phi(space):
    """pi1*mu + pi2*mu - sum(pi1*wbar_i (x) pi2*omega_i + pi2*wbar_i (x) pi1*omega_i)."""
    g = space.g
    T = KunnethHTensor.zero(space)
    c = space.S.coerce(Fraction(1, g))
    one = space.S.one()
    for i in range(g):
        T.mat[g + i][i] = T.mat[g + i][i] + c  # pi1*mu
        T.mat[2 * g + g + i][g + i] = T.mat[2 * g + g + i][g + i] + c  # pi2*mu
        T.mat[g + i][g + i] = T.mat[g + i][g + i] - one  # pi1*wbar (x) pi2*omega
        T.mat[2 * g + g + i][i] = T.mat[2 * g + g + i][i] - one  # pi2*wbar (x) pi1*omega
    return T


def pullback_first(space, T):
    """pi1* of a curve tensor into the product algebra."""
    out = KunnethHTensor.zero(space)
    for r in range(2 * space.g):
        for c in range(space.g):
            out.mat[r][c] = T.mat[r][c]
    return out


def pullback_second(space, T):
    out = KunnethHTensor.zero(space)
    for r in range(2 * space.g):
        for c in range(space.g):
            out.mat[2 * space.g + r][space.g + c] = T.mat[r][c]
    return out


def diagonal_pullback(T):
    """Pull back along x |-> (x, x): both Kunneth blocks map by the identity."""
    space = T.space
    g = space.g
    out = HTensorClass.zero(space)
    for r in range(2 * g):
        for c in range(g):
            out.mat[r][c] = (
                T.mat[r][c]
                + T.mat[r][g + c]
                + T.mat[2 * g + r][c]
                + T.mat[2 * g + r][g + c]
            )
    return out


def section_pullback(T):
    """Pull back along x |-> (P, x): first-factor classes die on a point."""
    space = T.space
    g = space.g
    out = HTensorClass.zero(space)
    for r in range(2 * g):
        for c in range(g):
            out.mat[r][c] = T.mat[2 * g + r][g + c]
    return out


def cup_of_htensor(T):
    """Apply the cup product between the H^1 leg and the Omega^1 leg."""
    space = T.space
    g = space.g
    out = H2Kunneth.zero(space)
    cup = space.cup
    for r in range(4 * g):
        for c in range(2 * g):
            v = T.mat[r][c]
            if space.S.is_zero(v):
                continue
            if r < 2 * g and c < g:
                out.top1 = out.top1 + v * cup[r][c]
            elif r < 2 * g and c >= g:
                out.mixed[r][c - g] = out.mixed[r][c - g] + v
            elif r >= 2 * g and c < g:
                out.mixed[c][r - 2 * g] = out.mixed[c][r - 2 * g] - v
            else:
                out.top2 = out.top2 + v * cup[r - 2 * g][c - g]
    return out


def h2_trace_pair(A, B):
    """tr(A cup B) in H^4 of the product (top1*top2' + top2*top1' - mixed part)."""
    space = A.space
    S = space.S
    cup = space.cup
    acc = A.top1 * B.top2 + A.top2 * B.top1
    n = 2 * space.g
    # - sum A[ab] B[cd] cup[ac] cup[bd]
    for a in range(n):
        for b in range(n):
            va = A.mixed[a][b]
            if S.is_zero(va):
                continue
            for c in range(n):
                if S.is_zero(cup[a][c]):
                    continue
                for d in range(n):
                    vb = B.mixed[c][d]
                    if S.is_zero(vb):
                        continue
                    acc = acc - va * vb * cup[a][c] * cup[b][d]
    return acc


def h2_basis(space):
    """The Kunneth basis of H^2 of the product with the diagonal-pullback traces."""
    S = space.S
    n = 2 * space.g
    items = []
    t1 = H2Kunneth.zero(space)
    t1.top1 = S.one()
    items.append((t1, S.one()))  # tr Delta* (pi1* top) = 1
    t2 = H2Kunneth.zero(space)
    t2.top2 = S.one()
    items.append((t2, S.one()))
    for a in range(n):
        for b in range(n):
            e = H2Kunneth.zero(space)
            e.mixed[a][b] = S.one()
            items.append((e, space.cup[a][b]))  # tr Delta*(e_a cup e_b) = cup[ab]
    return items


def diagonal_class(space):
    """Solve tr(cl . phi) = tr(Delta* phi) against the Kunneth basis."""
    S = space.S
    n = 2 * space.g
    # top coefficients come from pairing with the two top classes
    out = H2Kunneth.zero(space)
    out.top1 = S.one()
    out.top2 = S.one()
    # mixed block D solves  - sum_ab D[ab] cup[a,c] cup[b,d] = cup[c,d]
    # i.e. C^T D C = -C; with the basis pairing, D = -(C^T)^{-1}
    CT = _transpose(space.cup)
    D = _mat_inv(S, CT)
    out.mixed = [[-x for x in r] for r in D]
    # verify the defining property on the full basis (duality is nondegenerate)
    for e, target in h2_basis(space):
        got = h2_trace_pair(out, e)
        if not S.is_zero(got - target):
            raise AssertionError("diagonal class failed trace duality")
    return out


def curvature_admissible(deg, space):
    """Curvature of a degree-`deg` admissible metric: deg * mu."""
    return mu(space).scale(deg)


def w_projection(h):
    """Projection of H^1 onto the complement W along the holomorphic forms."""
    space = h.space
    out = [space.S.zero()] * (2 * space.g)
    for i in range(space.g, 2 * space.g):
        out[i] = h.coords[i]
    return H1Class(space, out)


def _transpose(M):
    return [list(r) for r in zip(*M)]


def _mat_inv(S, M):
    n = len(M)
    A = [list(r) + [S.one() if i == j else S.zero() for j in range(n)] for i, r in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not S.is_zero(A[r][col])), None)
        if piv is None:
            raise AssertionError("singular duality matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = S.inv(A[col][col])
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and not S.is_zero(A[r][col]):
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [r[n:] for r in A]
