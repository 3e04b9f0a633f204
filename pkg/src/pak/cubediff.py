"""Difference operators on functions over a free abelian group.

The n-step operator is the alternating subset sum over translates
x + sum_{i in I} h_i; it satisfies the one-step recursion, kills every
restriction h_i = 0, and annihilates polynomials of total degree < n.
That determinacy is what pins Green data up to a quadratic polynomial
in the logarithms: the third difference of the candidate is fixed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


class AbelianModel:
    """Z^r (or K^r) with componentwise addition."""

    def __init__(self, rank, scalars=None):
        self.rank = rank
        self.scalars = scalars  # None = plain Python numbers / Fractions

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def zero(self):
        if self.scalars is None:
            return (Fraction(0),) * self.rank
        return (self.scalars.zero(),) * self.rank


class GroupFunction:
    """A scalar-valued function on r-tuples, optionally a known polynomial."""

    def __init__(self, model, evaluator, degree=None):
        self.model = model
        self.evaluator = evaluator
        self.degree = degree

    def __call__(self, x):
        return self.evaluator(x)

    @classmethod
    def monomial(cls, model, exponents, coeff=1):
        coeff = Fraction(coeff)

        def ev(x):
            acc = coeff
            for xi, e in zip(x, exponents):
                acc = acc * (Fraction(xi) ** e)
            return acc

        return cls(model, ev, degree=sum(exponents))

    @classmethod
    def polynomial(cls, model, terms):
        """terms: list of (coeff, exponent tuple)."""
        monos = [cls.monomial(model, e, c) for c, e in terms]

        def ev(x):
            return sum((m(x) for m in monos), Fraction(0))

        deg = max((sum(e) for _c, e in terms), default=0)
        return cls(model, ev, degree=deg)


def dd_n(f, n, x, steps):
    """The alternating sum over all subsets of the n step vectors."""
    if len(steps) != n:
        raise ValueError("need exactly n step vectors")
    model = f.model
    acc = None
    for k in range(n + 1):
        for idx in combinations(range(n), k):
            pt = x
            for i in idx:
                pt = model.add(pt, steps[i])
            term = f(pt) * ((-1) ** (n - k))
            acc = term if acc is None else acc + term
    return acc


def dd_n_recursive(f, n, x, steps):
    """The recursion: one step out, difference of the (n-1)-operator.

    D^0 = Id; D^n g (x, h_1..h_n) = D^(n-1) g(. + h_n) - D^(n-1) g evaluated
    at (x, h_1..h_(n-1)).
    """
    if n == 0:
        return f(x)
    shifted = dd_n_recursive(f, n - 1, f.model.add(x, steps[n - 1]), steps[:-1])
    plain = dd_n_recursive(f, n - 1, x, steps[:-1])
    return shifted - plain


def recursion_check(f, n, samples):
    """Max discrepancy between the subset-sum and recursive evaluations."""
    worst = Fraction(0)
    for x, steps in samples:
        d = dd_n(f, n, x, steps) - dd_n_recursive(f, n, x, steps)
        worst = max(worst, abs(Fraction(d)))
    return worst


def restriction_vanishing(f, n, i, samples):
    """dd_n with the i-th step zeroed must vanish everywhere."""
    model = f.model
    worst = Fraction(0)
    for x, steps in samples:
        steps = list(steps)
        steps[i] = model.zero()
        worst = max(worst, abs(Fraction(dd_n(f, n, x, steps))))
    return worst


def annihilates_low_degree(model, n, max_degree, span=2):
    """D^n kills every monomial of total degree < n (exhaustive check)."""
    r = model.rank
    grid = range(-span, span + 1)
    base = [tuple(Fraction(v) for v in vec) for vec in product((-span, 1, span), repeat=r)]
    step_tuples = [
        tuple(base[(i + k) % len(base)] for k in range(n)) for i in (0, 1, 2)
    ]
    for total in range(n):
        for expo in _exponents(r, total):
            f = GroupFunction.monomial(model, expo)
            for x in product(grid, repeat=r):
                for steps in step_tuples:
                    if dd_n(f, n, tuple(map(Fraction, x)), list(steps)) != 0:
                        return False
    return True


def _exponents(r, total):
    if r == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _exponents(r - 1, total - head):
            yield (head,) + rest


def green_determinacy_demo(G, G2, n_samples, rng, certificate=None):
    """When G2 - G is polynomial of degree <= 2, the third differences agree.

    `certificate`, when given, is the claimed difference as (coeff, exponents)
    terms; it must have total degree <= 2 and match G2 - G at the sampled
    points, and then D^3 G = D^3 G2 everywhere sampled.  Returns the worst
    |D^3 G - D^3 G2|; a cubic perturbation produces a nonzero witness.
    """
    model = G.model
    cert_fn = None
    if certificate is not None:
        if any(sum(e) > 2 for _c, e in certificate):
            raise ValueError("certificate has degree > 2")
        cert_fn = GroupFunction.polynomial(model, certificate)
    worst = Fraction(0)
    for _ in range(n_samples):
        x = tuple(Fraction(rng.randint(-6, 6)) for _ in range(model.rank))
        steps = [
            tuple(Fraction(rng.randint(-4, 4)) for _ in range(model.rank))
            for _ in range(3)
        ]
        if cert_fn is not None and G2(x) - G(x) != cert_fn(x):
            raise ValueError("certificate does not match the perturbation")
        d = dd_n(G, 3, x, steps) - dd_n(G2, 3, x, steps)
        worst = max(worst, abs(Fraction(d)))
    return worst
