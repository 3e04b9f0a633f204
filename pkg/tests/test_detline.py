"""Determinant-line logs, trace duality, quadratic codifferents."""

from fractions import Fraction

import pytest

from pak.detline import (
    QuadraticOrder,
    certify_in_base,
    codifferent_and_chi,
    det_K_log,
    det_quotient_log,
    gram_matrix,
    trace_dual_basis,
    trace_dual_check,
)
from pak.errors import NonMonogenic, NonSupported
from pak.ledger import IdeleCharacter
from pak.padic import Qp, LogBranch, assert_equal, make_extension, padic_log


def sqrt2_field(Q5):
    return make_extension(Q5, [Q5.from_int(-2), Q5.zero(), Q5.one()])


def test_goodlog_fixture(Q5, br5):
    K2 = sqrt2_field(Q5)
    beta = [K2.one(prec=40), K2.gen()]
    got = det_K_log(K2, Q5, beta, K2.one(prec=40), Q5.zero(), br5)
    want = padic_log(Q5.from_int(2), br5) * Fraction(3, 2)
    assert assert_equal(got, want, 28)


def test_goodlog_base_case(Q5, br5):
    x_log = padic_log(Q5.from_int(7), br5)
    assert (det_K_log(Q5, Q5, [Q5.one()], Q5.from_int(7), x_log, br5) - x_log).is_zeroish()


def test_goodlog_basis_change(Q5, br5, rng):
    # changing beta by a GL_2(Q5)-matrix M shifts the value by log(det M)
    K2 = sqrt2_field(Q5)
    beta = [K2.one(prec=40), K2.gen()]
    base = det_K_log(K2, Q5, beta, K2.one(prec=40), Q5.zero(), br5)
    for _ in range(5):
        while True:
            m = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
            if det != 0:
                break
        beta2 = [
            beta[0] * m[0][0] + beta[1] * m[0][1],
            beta[0] * m[1][0] + beta[1] * m[1][1],
        ]
        got = det_K_log(K2, Q5, beta2, K2.one(prec=40), Q5.zero(), br5)
        want = base + padic_log(Q5.from_int(det), br5)
        assert assert_equal(got, want, 26)


def test_trace_dual_fixture(Q5, br5):
    K2 = sqrt2_field(Q5)
    beta = [K2.one(prec=40), K2.gen()]
    dual = trace_dual_basis(K2, Q5, beta)
    # dual of {1, sqrt2} is {1/2, sqrt2/4}
    assert (dual[0] - K2.from_fraction(Fraction(1, 2))).is_zeroish()
    assert (dual[1] - K2.gen() * K2.from_fraction(Fraction(1, 4))).is_zeroish()
    assert trace_dual_check(K2, Q5, beta, br5).is_zeroish()


def test_trace_dual_random_bases(Q5, br5, rng):
    fields = [
        sqrt2_field(Q5),
        make_extension(Q5, [Q5.from_int(-5), Q5.zero(), Q5.one()]),
        make_extension(Qp(7, 32), [Qp(7, 32).from_int(-3), Qp(7, 32).zero(), Qp(7, 32).one()]),
    ]
    for K2 in fields:
        K = K2.base
        brK = LogBranch.iwasawa(K)
        for _ in range(5):
            while True:
                a, b, c, d = (rng.randint(-6, 6) for _ in range(4))
                if a * d - b * c != 0:
                    break
            beta = [
                K2.from_vector([a, b]),
                K2.from_vector([c, d]),
            ]
            res = trace_dual_check(K2, K, beta, brK)
            assert res.is_zeroish() or res.abs_prec() >= 20


def test_det_quotient_invariance(Q5, br5, rng):
    # re-choosing the comparison isomorphism by c' moves c by log(c') and the
    # induced trivialization by Norm(c'); the line log is unchanged
    from pak.padic import norm

    K2 = sqrt2_field(Q5)
    c = padic_log(K2.from_int(3), br5)
    line1 = det_quotient_log(K2, Q5, c, br5)
    for _ in range(5):
        cp = K2.from_vector([rng.randint(1, 6), rng.randint(-4, 4)])
        if not cp.known_nonzero():
            continue
        c2 = c + padic_log(cp, br5)
        line2 = det_quotient_log(K2, Q5, c2, br5)
        n = certify_in_base(K2.coerce(norm(cp, K2, Q5)), Q5)
        y = Q5.from_int(7)
        v1 = line1.log(y, br5)
        v2 = line2.log(y * n, br5)
        assert assert_equal(v1, v2, 24)


def test_det_quotient_scaling_rule(Q5, br5):
    # scaling log_U by a constant c scales the line log by tr(c)
    K2 = sqrt2_field(Q5)
    c = Q5.from_int(4)
    line0 = det_quotient_log(K2, Q5, K2.zero(), br5)
    line1 = det_quotient_log(K2, Q5, K2.coerce(c), br5)
    y = Q5.from_int(3)
    assert ((line0.log(y, br5) - line1.log(y, br5)) - c * 2).is_zeroish()


def test_codifferent_gaussian_fixture(Q5, br5):
    char = IdeleCharacter.make_standard(Q5)
    order = QuadraticOrder(-1)
    out = codifferent_and_chi(order, char, br5)
    l2 = padic_log(Q5.from_int(2), br5)
    assert assert_equal(out["deg_W"], -(l2 * 2), 26)
    assert assert_equal(out["chi"], l2, 26)
    assert (out["d_E"] - out["deg_W"]).is_zeroish()


def test_codifferent_trivial_and_errors(Q5, br5):
    char = IdeleCharacter.make_standard(Q5)
    out = codifferent_and_chi(QuadraticOrder(1), char, br5)
    assert out["deg_W"].is_zeroish() and out["chi"].is_zeroish()
    with pytest.raises(NonSupported):
        codifferent_and_chi(QuadraticOrder(5), char, br5)  # ramified at p=5
    with pytest.raises(NonMonogenic):
        QuadraticOrder(12)  # not squarefree


def test_codifferent_inert_case(Q5, br5):
    # Q(sqrt 2): 5 inert; N(w) = -1/disc = -1/8, so the finite data is the
    # ideal (1/8) and deg W = -3 log_5 2
    char = IdeleCharacter.make_standard(Q5)
    out = codifferent_and_chi(QuadraticOrder(2), char, br5)
    l2 = padic_log(Q5.from_int(2), br5)
    assert assert_equal(out["deg_W"], -(l2 * 3), 24)


def test_codifferent_disc_values(Q5, br5):
    # deg W = -sum_q v_q(disc) log_5 q for quadratic maximal orders
    char = IdeleCharacter.make_standard(Q5)
    l2 = padic_log(Q5.from_int(2), br5)
    l3 = padic_log(Q5.from_int(3), br5)
    out = codifferent_and_chi(QuadraticOrder(-3), char, br5)  # disc -3
    assert assert_equal(out["deg_W"], -l3, 24)
    out = codifferent_and_chi(QuadraticOrder(3), char, br5)  # disc 12
    assert assert_equal(out["deg_W"], -(l2 * 2 + l3), 24)
    out = codifferent_and_chi(QuadraticOrder(-7), char, br5)  # disc -7
    l7 = padic_log(Q5.from_int(7), br5)
    assert assert_equal(out["deg_W"], -l7, 24)


def test_gram_matrix_values(Q5):
    K2 = sqrt2_field(Q5)
    G = gram_matrix(K2, Q5, [K2.one(prec=40), K2.gen()])
    assert (G[0][0] - 2).is_zeroish()
    assert G[0][1].is_zeroish() and G[1][0].is_zeroish()
    assert (G[1][1] - 4).is_zeroish()
