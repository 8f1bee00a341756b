"""Exact substrate: ring axioms, canonical forms, rendering, evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adelic_zeta.errors import DomainError, PoleError
from adelic_zeta.exact import (LaurentValue, QHalf, Rank2Val, RatFuncX,
                               parse_value, rank2_compare, render_value)

# ---------------------------------------------------------------------------
# strategies
# ---------------------------------------------------------------------------

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))

qhalves = st.lists(
    st.tuples(st.integers(-4, 4), rationals), max_size=3
).map(lambda items: QHalf._norm(items))

laurents = st.lists(
    st.tuples(st.integers(-3, 3), qhalves), max_size=3
).map(lambda items: LaurentValue._norm((i, c) for i, c in items))

rank2s = st.builds(Rank2Val, st.integers(-6, 6), st.integers(-6, 6))


# ---------------------------------------------------------------------------
# LaurentValue arithmetic
# ---------------------------------------------------------------------------


def test_additive_inverse():
    one_plus_x = LaurentValue.one() + LaurentValue.X()
    assert one_plus_x + (-LaurentValue.X()) == LaurentValue.one()


def test_polynomial_identity():
    one = LaurentValue.one()
    x = LaurentValue.X()
    assert (one + x) * (one - x) == one - LaurentValue.X(2)


def test_monomial_product():
    qhalf = LaurentValue.term(1, 1, 0)  # q^(1/2)
    assert LaurentValue.X(3) * qhalf == LaurentValue.term(1, 1, 3)


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + LaurentValue.zero() == a
    assert a * LaurentValue.one() == a
    assert a - a == LaurentValue.zero()


@given(laurents)
def test_canonicalization_idempotent(a):
    renormed = LaurentValue._norm(a.terms)
    assert renormed == a
    assert renormed.terms == a.terms
    assert all(c for _, c in a.terms)


@given(laurents, laurents)
def test_eval_is_ring_hom(a, b):
    x0, q0 = Fraction(2, 3), Fraction(4)
    assert (a * b).eval(x0, q0) == a.eval(x0, q0) * b.eval(x0, q0)
    assert (a + b).eval(x0, q0) == a.eval(x0, q0) + b.eval(x0, q0)


def test_eval_modes():
    v = LaurentValue.term(3, 1, 0)  # 3 q^(1/2)
    assert v.eval(1, Fraction(9, 4)) == Fraction(9, 2)
    with pytest.raises(DomainError):
        v.eval(1, 2)  # sqrt(2) is not rational
    assert v.eval(1, 2, mode="float") == pytest.approx(3 * 2**0.5)


# ---------------------------------------------------------------------------
# rendering and parsing
# ---------------------------------------------------------------------------


def test_render_canonical_example():
    v = LaurentValue.term(Fraction(3, 2), 1, -1) + LaurentValue.one()
    assert str(v) == "3/2*q^(1/2)*X^-1 + 1"


def test_render_signs_and_powers():
    v = (LaurentValue.term(-2, 4, 2) + LaurentValue.term(1, -1, 0))
    assert str(v) == "q^(-1/2) - 2*q^2*X^2"
    assert str(LaurentValue.zero()) == "0"
    assert str(LaurentValue.X()) == "X"


@given(laurents)
def test_parse_render_roundtrip(v):
    assert parse_value(render_value(v)) == v


def test_parse_variants():
    assert parse_value("q") == LaurentValue.term(1, 2, 0)
    assert parse_value("-X^2 + 1/2") == (
        LaurentValue.term(-1, 0, 2) + LaurentValue.term(Fraction(1, 2)))
    assert parse_value("2*q^-1*X") == LaurentValue.term(2, -2, 1)
    with pytest.raises(ValueError):
        parse_value("3y + 1")


# ---------------------------------------------------------------------------
# RatFuncX
# ---------------------------------------------------------------------------


def _geom() -> RatFuncX:
    return RatFuncX(LaurentValue.one(), LaurentValue.one() - LaurentValue.X())


def test_geometric_sum():
    assert _geom().eval(Fraction(1, 2)) == 2


def test_cancellation_eval():
    f = RatFuncX(LaurentValue.one() - LaurentValue.X(2),
                 LaurentValue.one() - LaurentValue.X())
    assert f.eval(5) == 6


def test_finite_geometric_identity():
    series = LaurentValue.zero()
    for i in range(4):
        series = series + LaurentValue.X(i)
    closed = RatFuncX(LaurentValue.one() - LaurentValue.X(4),
                      LaurentValue.one() - LaurentValue.X())
    assert series.eval(2) == 15
    assert closed.eval(2) == 15


def test_pole_error():
    with pytest.raises(PoleError):
        _geom().eval(1)


def test_canonical_denominator():
    # X / (q X) should normalize the denominator to lowest exponent 0 and
    # leading coefficient 1
    f = RatFuncX(LaurentValue.X(), LaurentValue.term(1, 2, 1))
    assert f.den == LaurentValue.one()
    assert f.num == LaurentValue.term(1, -2, 0)


@given(laurents, laurents)
def test_ratfunc_eval_multiplicative(a, b):
    one = LaurentValue.one()
    x = LaurentValue.X()
    f = RatFuncX(a, one - x)
    g = RatFuncX(b, one + x)
    x0, q0 = Fraction(1, 3), Fraction(4)
    lhs = (f * g).eval(x0, q0)
    assert lhs == f.eval(x0, q0) * g.eval(x0, q0)


def test_ratfunc_equality_cross_multiplication():
    one = LaurentValue.one()
    x = LaurentValue.X()
    f = RatFuncX(one - LaurentValue.X(2), one - x)
    g = RatFuncX(one + x, one)
    assert f == g


# ---------------------------------------------------------------------------
# Rank2Val
# ---------------------------------------------------------------------------


def test_rank2_examples():
    assert rank2_compare(Rank2Val(0, 0), Rank2Val(0, 0)) == "eq"
    assert rank2_compare(Rank2Val(5, 1), Rank2Val(0, 2)) == "lt"
    assert rank2_compare(Rank2Val(1, 2), Rank2Val(0, 2)) == "gt"


@given(rank2s, rank2s, rank2s)
def test_rank2_total_order_translation_invariant(a, b, c):
    assert (a < b) or (a == b) or (b < a)
    if a < b:
        assert a + c < b + c
    if a == b:
        assert a + c == b + c


@given(rank2s, rank2s)
def test_rank2_compare_consistent(a, b):
    rel = rank2_compare(a, b)
    if a == b:
        assert rel == "eq"
    elif a < b:
        assert rel == "lt"
    else:
        assert rel == "gt"
