"""Gamma-factor algebra: rewrite rules, Q extraction, numeric fidelity.

The conventions are Gamma_R(s) = pi^(-s/2) Gamma(s/2) and Gamma_C(s) =
(2 pi)^(-s) Gamma(s); with these, Legendre duplication reads
Gamma_R(s) Gamma_R(s+1) = 2 Gamma_C(s), and normalization preserves numeric
values exactly (the explicit 2 is carried in the prefactor).
"""

import math
import random

import pytest
from scipy.special import gamma as _gamma

from adelic_zeta.errors import ConventionViolationError, PoleError
from adelic_zeta.gammafactor import (GammaProduct, apply_duplication,
                                     apply_shift_reduction, check_Q_symmetry,
                                     compute_Q, duplication_candidates,
                                     gamma_C, gamma_R, gamma_p1,
                                     gamma_surface, normal_form,
                                     shift_candidates)


def test_gamma_R_at_1():
    assert gamma_R().eval(1) == pytest.approx(1.0, abs=1e-14)


def test_gamma_C_at_1():
    assert gamma_C().eval(1) == pytest.approx(1 / (2 * math.pi), abs=1e-14)


def test_duplication_carries_factor_two():
    # Gamma_R(2.5) Gamma_R(3.5) = 2 Gamma_C(2.5) with these conventions
    lhs = (math.pi ** -1.25 * _gamma(1.25)) * (math.pi ** -1.75 * _gamma(1.75))
    rhs = (2 * math.pi) ** -2.5 * _gamma(2.5)
    assert lhs / rhs == pytest.approx(2.0, abs=1e-12)
    prod = gamma_R(0) * gamma_R(1)
    nf = normal_form(prod)
    assert nf.gammas == (("C", 0, 1),)
    assert nf.two_exp == 1
    s = 2.5
    assert prod.eval(s) == pytest.approx(nf.eval(s), rel=1e-13)


def test_recurrence_rule():
    prod = gamma_C(0) * gamma_C(-1, -1)  # Gamma_C(s) / Gamma_C(s-1)
    nf = normal_form(prod)
    assert nf.is_gamma_free
    s = 1.7 + 0.3j
    assert nf.eval(s) == pytest.approx((s - 1) / (2 * math.pi), rel=1e-13)


def test_unpaired_gamma_R_untouched():
    prod = gamma_R(0, 2)
    assert normal_form(prod) == prod


def test_gamma_surface_elliptic_case():
    # g=1, r1=1, r2=0: Gamma_R(s) Gamma_R(s-1) / Gamma_C(s) is gamma-free,
    # equal to 2 * (2 pi) / (s - 1)
    gs = gamma_surface(1, 1, 0)
    assert gs.is_gamma_free
    s = 2.5
    assert gs.eval(s) == pytest.approx(4 * math.pi / (s - 1), rel=1e-13)
    # and Q Gamma(S) = Gamma(P1)^0 = 1
    q = compute_Q(1, 1, 0)
    assert q.eval(s) * gs.eval(s) == pytest.approx(1.0, rel=1e-13)


def test_gamma_surface_genus0_is_p1_completion():
    for r1, r2 in [(1, 0), (0, 1), (2, 1)]:
        assert gamma_surface(0, r1, r2) == normal_form(gamma_p1(r1, r2))


def test_gamma_surface_numeric_consistency():
    s = 2.3 + 0.7j
    raw = gamma_p1(0, 1) * gamma_C(0, -2 * 2)  # g=2, r1=0, r2=1
    assert gamma_surface(2, 0, 1).eval(s) == pytest.approx(raw.eval(s),
                                                           rel=1e-12)


def test_compute_Q_values():
    # derived exponent m = g (r1 + r2); constant (2 pi)^-m 2^(-g r1)
    q = compute_Q(2, 1, 0)
    assert q.m == 2
    assert (q.coeff, q.pi_exp, q.two_exp) == (1, -2, -4)
    q = compute_Q(3, 0, 1)
    assert q.m == 3
    assert (q.pi_exp, q.two_exp) == (-3, -3)
    q = compute_Q(1, 1, 0)
    assert q.m == 1


def test_Q_symmetry_sign():
    assert check_Q_symmetry(compute_Q(2, 1, 0)) == 1
    assert check_Q_symmetry(compute_Q(1, 1, 0)) == -1
    assert check_Q_symmetry(compute_Q(0, 1, 0)) == 1  # m = 0


def test_Q_squared_symmetry_exact():
    for g in range(0, 7):
        for r1 in range(0, 7):
            for r2 in range(0, (7 - r1) // 2 + 1):
                if r1 + 2 * r2 == 0 or r1 + 2 * r2 > 6:
                    continue
                q = compute_Q(g, r1, r2)
                s = 1.37 + 0.4j
                lhs = q.eval(2 - s) ** 2
                rhs = q.eval(s) ** 2
                assert lhs == pytest.approx(rhs, rel=1e-12)
                sign = check_Q_symmetry(q)
                assert q.eval(2 - s) == pytest.approx(sign * q.eval(s),
                                                      rel=1e-12)


def test_normal_form_eval_consistency_window():
    rng = random.Random(7)
    for _ in range(25):
        g = rng.randint(0, 1)
        prod = GammaProduct.one()
        for _ in range(rng.randint(1, 4)):
            kind = rng.choice(["R", "C"])
            shift = rng.choice([-1, 0])
            exp = rng.choice([-2, -1, 1, 2])
            prod = prod * (gamma_R(shift, exp) if kind == "R"
                           else gamma_C(shift, exp))
        s = complex(rng.uniform(0.5, 4.0), rng.uniform(-10, 10))
        try:
            expected = prod.eval(s)
        except PoleError:
            continue
        assert normal_form(prod).eval(s) == pytest.approx(expected, rel=1e-10)


def test_confluence_random_rule_order():
    rng = random.Random(20240811)
    inputs = []
    for g in range(0, 5):
        for r1, r2 in [(1, 0), (0, 1), (2, 0), (1, 1)]:
            inputs.append(gamma_p1(r1, r2) * gamma_C(0, -g * (r1 + 2 * r2)))
            inputs.append(gamma_p1(r1, r2) ** (1 - g))
    for raw in inputs:
        reference = normal_form(raw)
        for _ in range(5):
            g = raw
            while True:
                moves = [("dup", a) for a in duplication_candidates(g)]
                moves += [("shift", a) for a in shift_candidates(g)]
                if not moves:
                    break
                kind, a = rng.choice(moves)
                g = (apply_duplication(g, a) if kind == "dup"
                     else apply_shift_reduction(g, a))
            assert g == reference, (str(raw), str(g), str(reference))


def test_compute_Q_monomial_window():
    for g in range(0, 7):
        for r1 in range(0, 7):
            for r2 in range(0, 4):
                if not (1 <= r1 + 2 * r2 <= 6):
                    continue
                q = compute_Q(g, r1, r2)
                assert q.m == g * (r1 + r2)


def test_pole_detection():
    with pytest.raises(PoleError):
        gamma_R().eval(0.0)
    with pytest.raises(PoleError):
        gamma_R().eval(-2.0 + 1e-12j)
    with pytest.raises(PoleError):
        gamma_C(-1).eval(1.0)
    # zeros (negative exponents) do not raise
    assert gamma_R(0, -1).eval(-2.0) == 0.0


def test_convention_violation_detected(monkeypatch):
    # a wrong Hodge recipe leaves gamma factors in the quotient
    import adelic_zeta.gammafactor as gf

    monkeypatch.setattr(gf, "gamma_surface",
                        lambda g, r1, r2: gf.gamma_R(0, 1))
    with pytest.raises(ConventionViolationError):
        gf.compute_Q(2, 1, 0)
