"""Curve zeta functions against enumeration oracles.

Point counts are checked against direct enumeration over F_5 and F_25;
closed-point counts of the projective line against a monic-irreducible
census; the truncated Euler product against the closed form.
"""

import itertools

import pytest

from adelic_zeta.errors import (DomainError, InvalidCurveData,
                                UnsupportedFamilyError)
from adelic_zeta.exact import LaurentValue
from adelic_zeta.ffcurves import (CurveFF, DivisorFF, closed_point_counts,
                                  elliptic_curve, euler_truncated,
                                  point_counts, projective_line, rr_dim,
                                  summation_check, zeta_closed_form,
                                  zeta_value)
from adelic_zeta.fixtures import (ELLIPTIC_F5, _count_points_f_p,
                                  _count_points_f_p2)

P1_F2 = projective_line(2)

# y^2 = x^3 + x + 1 as long Weierstrass coefficients
_E5 = (0, 0, 0, 1, 1)


def test_elliptic_f5_point_counts_against_enumeration():
    n1 = _count_points_f_p(_E5, 5)
    n2 = _count_points_f_p2(_E5, 5)
    assert n1 == 9
    assert n2 == 27
    assert point_counts(ELLIPTIC_F5, 2) == [n1, n2]


def test_p1_point_counts():
    assert point_counts(P1_F2, 2) == [3, 5]


def _monic_irreducible_count(q: int, n: int) -> int:
    """Count monic irreducibles of degree n over F_q by sieve (q prime)."""
    def poly_mod(a, b):
        a = list(a)
        while len(a) >= len(b):
            c = a[-1]
            off = len(a) - len(b)
            for i, cb in enumerate(b):
                a[off + i] = (a[off + i] - c * cb) % q
            while a and a[-1] == 0:
                a.pop()
        return tuple(a)

    irreducibles = {1: [(c, 1) for c in range(q)]}
    for d in range(2, n + 1):
        found = []
        for coeffs in itertools.product(range(q), repeat=d):
            poly = tuple(coeffs) + (1,)
            if any(
                len(poly_mod(poly, f)) == 0
                for dd in range(1, d // 2 + 1)
                for f in irreducibles[dd]
            ):
                continue
            found.append(poly)
        irreducibles[d] = found
    return len(irreducibles[n])


def test_p1_closed_points_against_irreducible_census():
    # degree-1 places: q + 1 (affine line points plus infinity);
    # degree-n places: monic irreducibles of degree n
    a = closed_point_counts(P1_F2, 3)
    assert a[0] == 2 + 1
    assert a[1] == _monic_irreducible_count(2, 2) == 1
    assert a[2] == _monic_irreducible_count(2, 3) == 2


def test_moebius_inversion_identity():
    for curve in (P1_F2, projective_line(3), ELLIPTIC_F5):
        counts = point_counts(curve, 20)
        a = closed_point_counts(curve, 20)
        for n in range(1, 21):
            assert sum(d * a[d - 1] for d in range(1, n + 1) if n % d == 0) \
                == counts[n - 1]


def test_elliptic_closed_points():
    assert closed_point_counts(ELLIPTIC_F5, 1)[0] == 9


def test_invalid_numerator_detected():
    fake = CurveFF(2, 1, (1, 1, 1))  # fails the Weil functional equation
    assert not fake.weil_certificate
    with pytest.raises(InvalidCurveData):
        point_counts(fake, 3)
    # valid functional equation but impossible counts: 1 - 5t + 2t^2 over F_2
    ghost = CurveFF(2, 1, (1, -5, 2))
    assert ghost.weil_certificate
    with pytest.raises(InvalidCurveData):
        closed_point_counts(ghost, 4)


def test_zeta_closed_form():
    z, cert = zeta_closed_form(P1_F2)
    assert cert
    assert z.num == LaurentValue.one()
    z5, cert5 = zeta_closed_form(ELLIPTIC_F5)
    assert cert5
    from fractions import Fraction
    t0 = Fraction(1, 25)
    expect = (1 + 3 * t0 + 5 * t0**2) / ((1 - t0) * (1 - 5 * t0))
    assert z5.eval(t0, 1) == expect
    _, cert_fake = zeta_closed_form(CurveFF(2, 1, (1, 1, 1)))
    assert not cert_fake


def test_euler_truncated_matches_closed_form():
    assert euler_truncated(P1_F2, 3, 20) == pytest.approx(32 / 21, abs=1e-9)
    z = zeta_value(ELLIPTIC_F5, 5.0 ** -2)
    assert euler_truncated(ELLIPTIC_F5, 2, 15) == pytest.approx(z, abs=1e-9)
    single = euler_truncated(ELLIPTIC_F5, 2, 1)
    assert single == pytest.approx((1 - 5.0 ** -2) ** -9)


def test_euler_truncated_error_decreases_monotonically():
    for curve in (P1_F2, ELLIPTIC_F5):
        s = 2.5
        limit = zeta_value(curve, curve.q ** -s)
        errors = [abs(euler_truncated(curve, s, d) - limit)
                  for d in range(1, 13)]
        # strict decrease until the float noise floor
        assert all(e2 < e1 or e1 < 1e-11
                   for e1, e2 in zip(errors, errors[1:]))


def test_euler_domain_error():
    with pytest.raises(DomainError):
        euler_truncated(P1_F2, 1.0, 5)


def test_rr_dim():
    assert rr_dim(P1_F2, DivisorFF(3)) == 4
    assert rr_dim(P1_F2, DivisorFF(-1)) == 0
    ell = elliptic_curve(5, -3)
    assert rr_dim(ell, DivisorFF(1)) == 1
    assert rr_dim(ell, DivisorFF(0, principal=True)) == 1
    assert rr_dim(ell, DivisorFF(0, principal=False)) == 0
    assert rr_dim(ell, DivisorFF(-2)) == 0
    with pytest.raises(UnsupportedFamilyError):
        rr_dim(CurveFF(2, 0, (1,)), DivisorFF(0))


def test_summation_check_examples():
    rep = summation_check(P1_F2, DivisorFF(0), 0)
    assert rep.equal and rep.lhs == LaurentValue.term(2)
    rep = summation_check(P1_F2, DivisorFF(2), 3)
    assert rep.equal
    assert rep.lhs == LaurentValue.term(8, 0, 3)
    ell = elliptic_curve(3, 1)
    rep = summation_check(ell, DivisorFF(-1), 2)
    assert rep.equal
    assert rep.lhs == LaurentValue.term(1, 0, 2)
    assert rep.l_KD == 1  # l(K - D) = l(deg 1) = 1


def test_summation_sweep():
    curves = [projective_line(q) for q in (2, 3, 4, 5)]
    curves += [elliptic_curve(2, 1), elliptic_curve(5, -3),
               elliptic_curve(7, 0)]
    for curve in curves:
        for deg in range(-6, 7):
            for principal in ((True, False) if deg == 0 else (False,)):
                for shift in range(-2, 3):
                    rep = summation_check(
                        curve, DivisorFF(deg, principal), shift)
                    assert rep.equal, rep.to_dict()


def test_weil_certificate_on_fixture_family():
    for q, trace in [(2, 1), (3, -2), (5, 3), (7, -4)]:
        assert elliptic_curve(q, trace).weil_certificate
    with pytest.raises(InvalidCurveData):
        elliptic_curve(2, 4)
