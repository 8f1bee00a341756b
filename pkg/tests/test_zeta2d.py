"""Symbolic zeta-integral factors and their assembly."""

import math
import random
from fractions import Fraction

import pytest

from adelic_zeta.errors import DomainError, PoleError
from adelic_zeta.ffcurves import CurveFF, projective_line
from adelic_zeta.fixtures import elliptic_model, genus2_model, p1_model
from adelic_zeta.local2d import PointData, eqchar_field
from adelic_zeta.surface import FibreDesc, completed_Z
from adelic_zeta.zeta2d import (QSExpr, assemble_zeta2,
                                assert_exponent_cancellation,
                                fibre_integral_sq, fibre_zeta_symbolic,
                                horizontal_factor, local_factor_smooth,
                                per_prime_factor, renormalizer_sq,
                                xi_p1_completed)


# ---------------------------------------------------------------------------
# QSExpr
# ---------------------------------------------------------------------------


def test_qsexpr_merging_and_base_reduction():
    a = QSExpr.q_power(4, 1, 0)       # 4^s = 2^(2s)
    b = QSExpr.q_power(2, -2, 0)      # 2^(-2s)
    assert a * b == QSExpr.one()
    z = QSExpr.zeta_factor(9, -1, 0)  # 1 - 9^-s = 1 - 3^(-2s)
    assert z.zf == ((3, Fraction(-2), Fraction(0), 1),)


def test_qsexpr_normal_form_is_order_independent():
    rng = random.Random(3)
    atoms = [
        QSExpr.q_power(2, 1, -1),
        QSExpr.zeta_factor(3, -1, 0, -2),
        QSExpr.numerator_factor(5, (1, 3, 5), 2),
        QSExpr.constant(Fraction(3, 7)),
        QSExpr.x_power(1, 0),
        QSExpr.zeta_factor(2, -1, 1, 1),
    ]
    ref = QSExpr.one()
    for a in atoms:
        ref = ref * a
    for _ in range(10):
        rng.shuffle(atoms)
        prod = QSExpr.one()
        for a in atoms:
            prod = prod * a
        assert prod == ref


def test_qsexpr_eval_and_pow():
    e = QSExpr.zeta_factor(2, -1, 0, -1) * QSExpr.q_power(2, -1, 1)
    val = e.eval(2.0)
    assert val == pytest.approx((1 - 0.25) ** -1 * 2 ** (-1.0), rel=1e-14)
    assert (e ** 2).eval(2.0) == pytest.approx(val ** 2, rel=1e-13)
    assert (e ** 0) == QSExpr.one()


def test_qsexpr_x_part_guard():
    e = QSExpr.x_power(1, 0)
    with pytest.raises(DomainError):
        e.eval(2.0)
    assert e.eval(2.0, x=1.0) == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# local and fibre factors
# ---------------------------------------------------------------------------


def test_local_factor_smooth_examples():
    pd = PointData(eqchar_field(2, 0))
    assert local_factor_smooth(pd).eval(2) == pytest.approx(4 / 3)
    pd = PointData(eqchar_field(3, -1))
    assert local_factor_smooth(pd).eval(1) == pytest.approx(3 / 2)
    pd = PointData(eqchar_field(2, 2))
    assert local_factor_smooth(pd).eval(1) == pytest.approx(2.0)


def test_fibre_integral_good_genus1():
    fd = FibreDesc(5, (CurveFF(5, 1, (1, 3, 5)),))
    expr = fibre_integral_sq(fd, 1)
    # vertical exponent 0: pure squared zeta factor
    assert expr.q_exponents() == {}
    t = 5.0 ** -2.5
    z = (1 + 3 * t + 5 * t * t) / ((1 - t) * (1 - 5 * t))
    assert expr.eval(2.5) == pytest.approx(z * z, rel=1e-12)


def test_fibre_integral_good_genus2():
    fd = FibreDesc(3, (CurveFF(3, 2, (1, 0, 0, 0, 9)),))
    expr = fibre_integral_sq(fd, 2)
    # v = 2 - 2g = -2 per copy: weight 3^(-4(1-s))
    assert expr.q_exponents() == {3: (Fraction(4), Fraction(-4))}


def test_fibre_integral_nodal_cubic():
    # nodal cubic /F_2: P^1 normalization, one deg-1 node, arithmetic genus 1
    fd = FibreDesc(2, (projective_line(2),), (1,))
    expr = fibre_integral_sq(fd, 1)
    s = 2.5
    expect = (1 / (1 - 2 ** (1 - s))) ** 2 * 2 ** (1 - s)
    assert expr.eval(s) == pytest.approx(expect, rel=1e-12)


def test_renormalizer_examples():
    r = renormalizer_sq(2)
    assert r.eval(2) == pytest.approx((8 / 3) ** 2 / 16, rel=1e-13)
    # pole at s=1 retained symbolically, flagged on evaluation
    assert any(v == 1 for _, _, v, _ in r.zf)
    with pytest.raises(PoleError):
        r.eval(1.0)


def test_exponent_cancellation_good_fibres():
    for q, g in [(2, 0), (3, 1), (2, 2), (5, 3), (7, 2)]:
        numerator = _synthetic_numerator(q, g)
        fd = FibreDesc(q, (CurveFF(q, g, numerator),))
        net = per_prime_factor(fd, g).q_exponents()
        assert net == {}, (q, g, net)
        assert_exponent_cancellation(fd, g)


def _synthetic_numerator(q: int, g: int) -> tuple[int, ...]:
    # (1 + q t^2)^g expanded: a valid Weil numerator of degree 2g
    out = [0] * (2 * g + 1)
    for k in range(g + 1):
        out[2 * k] = math.comb(g, k) * q**k
    return tuple(out)


def test_exponent_cancellation_nodal_fibre():
    fd = FibreDesc(2, (projective_line(2),), (1,))
    net = per_prime_factor(fd, 1).q_exponents()
    assert net == {2: (Fraction(-1), Fraction(1))}  # conductor weight 2^(1-s)
    assert_exponent_cancellation(fd, 1)


def test_singular_fibre_weights_vanish_at_s1():
    fd = FibreDesc(2, (projective_line(2),), (1,))
    expr = fibre_integral_sq(fd, 1)
    # all monomial weights have a + b = 0, i.e. they are trivial at s = 1,
    # leaving exactly the squared fibre zeta
    assert all(a + b == 0 for _, a, b in expr.qmono)
    stripped = QSExpr(coeff=expr.coeff, zf=expr.zf, pnum=expr.pnum)
    assert stripped == fibre_zeta_symbolic(fd) ** 2


def test_two_variable_flag():
    fd = FibreDesc(2, (projective_line(2),))
    expr = fibre_integral_sq(fd, 0, two_variable=True)
    assert expr.x_zf == -2
    with pytest.raises(DomainError):
        expr.eval(3.0)
    val = expr.eval(3.0, x=0.5)
    base = fibre_integral_sq(fd, 0).eval(3.0)
    assert val == pytest.approx(base * (1 - 0.5**3.0) ** -2, rel=1e-12)


# ---------------------------------------------------------------------------
# horizontal and assembled integrals
# ---------------------------------------------------------------------------


def test_horizontal_factor_rational():
    from adelic_zeta.surface import RATIONAL_FIELD

    val = horizontal_factor(RATIONAL_FIELD, 4.0)
    assert val == pytest.approx((math.pi / 6) ** 2, rel=1e-12)
    with pytest.raises(PoleError):
        horizontal_factor(RATIONAL_FIELD, 2.0)  # xi pole at s/2 = 1


def test_horizontal_factor_quadratic_cross_checked():
    from adelic_zeta.surface import quadratic_field

    qi = quadratic_field(-4, "Q(i)")
    val = horizontal_factor(qi, 8.0)
    # independent series for L(4, chi_-4) = sum (-1)^k (2k+1)^-4,
    # assembled into xi_k(4) = |d|^2 Gamma_C(4) zeta(4) L(4, chi_-4)
    import mpmath

    with mpmath.workdps(30):
        L = mpmath.nsum(lambda k: (-1) ** k * (2 * k + 1) ** -4,
                        [0, mpmath.inf])
        xi4 = 4 ** 2 * (2 * math.pi) ** -4.0 * math.gamma(4) \
            * float(mpmath.zeta(4)) * float(L)
    assert val == pytest.approx(xi4 ** 2, rel=1e-9)


def test_assemble_matches_completed_square_p1():
    m = p1_model(60)
    s = 3.0
    assembled = assemble_zeta2(m, s)
    assert assembled == pytest.approx(completed_Z(m, s) ** 2, rel=1e-12)


def test_assemble_elliptic_reduction():
    m = elliptic_model(30)
    s = 2.5
    assembled = assemble_zeta2(m, s)
    assert assembled == pytest.approx(completed_Z(m, s) ** 2, rel=1e-12)
    # renormalizer power is zero at genus 1: the per-prime factor IS the
    # squared fibre factor
    for fd in m.fibres:
        assert per_prime_factor(fd, 1) == fibre_integral_sq(fd, 1)


def test_assemble_higher_copies():
    m = genus2_model(60)
    s = 2.5
    a4 = assemble_zeta2(m, s, n_copies=4)
    assert a4 == pytest.approx(completed_Z(m, s) ** 4, rel=1e-10)


def test_assemble_domain_checks():
    m = p1_model(30)
    with pytest.raises(DomainError):
        assemble_zeta2(m, 1.5)
    with pytest.raises(DomainError):
        assemble_zeta2(m, 3.0, n_copies=3)


def test_exact_completion_converges():
    m = genus2_model(200)
    devs = []
    for p_max in (50, 100, 200):
        a = assemble_zeta2(m, 3.0, p_max=p_max,
                           exact_renormalizer_completion=True)
        c = completed_Z(m, 3.0, p_max=p_max) ** 2
        devs.append(abs(a / c - 1))
    assert devs[0] > devs[1] > devs[2]


def test_xi_p1_truncated_vs_exact():
    m = p1_model(400)
    s = 3.0
    trunc = xi_p1_completed(m, s, 400)
    exact = xi_p1_completed(m, s, 400, exact=True)
    assert trunc == pytest.approx(exact, rel=1e-2)
    assert trunc != pytest.approx(exact, rel=1e-9)
