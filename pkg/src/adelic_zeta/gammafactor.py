"""Symbolic algebra of archimedean gamma factors.

Conventions (fixed by the archimedean integrals of the theory):

    Gamma_R(s) = pi^(-s/2) Gamma(s/2)
    Gamma_C(s) = (2 pi)^(-s) Gamma(s)

A ``GammaProduct`` is a finite product of Gamma_R/Gamma_C factors with
integer shifts and integer exponents, times an exact prefactor

    coeff * pi^pi_exp * 2^two_exp * prod_a (s + a)^{m_a}.

Normal form applies two numerically exact rewrite rules to a fixed point:

  duplication     Gamma_R(s+a) Gamma_R(s+a+1) = 2 Gamma_C(s+a)
  recurrence      Gamma_C(s+a+1) = ((s+a) / 2pi) Gamma_C(s+a)

(with these conventions Legendre duplication carries the explicit factor 2;
the recurrence is used to pull every Gamma_C factor down to the least shift
present).  Both rules preserve the numeric value exactly, so evaluation
commutes with normalization.

The surface gamma factor divides the completed P^1 factor by the weight-one
Hodge contribution Gamma_C(s)^(g per real place, 2g per complex place), and
Q(s) is the gamma-free monomial relating Gamma(P^1-completion)^(1-g) to the
surface gamma factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import loggamma

from .errors import ConventionViolationError, PoleError

_POLE_TOL = 1e-8


def _merge(d: dict, key, delta: int):
    v = d.get(key, 0) + delta
    if v:
        d[key] = v
    elif key in d:
        del d[key]


@dataclass(frozen=True)
class GammaProduct:
    gammas: tuple[tuple[str, int, int], ...] = ()  # (kind, shift, exponent)
    coeff: Fraction = Fraction(1)
    pi_exp: Fraction = Fraction(0)
    two_exp: Fraction = Fraction(0)
    poly: tuple[tuple[int, int], ...] = ()  # (shift a, mult): prod (s+a)^mult

    @staticmethod
    def _make(gammas: dict, coeff, pi_exp, two_exp, poly: dict) -> "GammaProduct":
        return GammaProduct(
            tuple(sorted((k, a, e) for (k, a), e in gammas.items() if e)),
            Fraction(coeff),
            Fraction(pi_exp),
            Fraction(two_exp),
            tuple(sorted((a, m) for a, m in poly.items() if m)),
        )

    @staticmethod
    def one() -> "GammaProduct":
        return GammaProduct()

    def _gdict(self) -> dict:
        return {(k, a): e for k, a, e in self.gammas}

    def _pdict(self) -> dict:
        return dict(self.poly)

    def __mul__(self, other: "GammaProduct") -> "GammaProduct":
        g = self._gdict()
        for (k, a), e in other._gdict().items():
            _merge(g, (k, a), e)
        p = self._pdict()
        for a, m in other.poly:
            _merge(p, a, m)
        return GammaProduct._make(
            g,
            self.coeff * other.coeff,
            self.pi_exp + other.pi_exp,
            self.two_exp + other.two_exp,
            p,
        )

    def __pow__(self, n: int) -> "GammaProduct":
        return GammaProduct._make(
            {(k, a): e * n for k, a, e in self.gammas},
            self.coeff**n,
            self.pi_exp * n,
            self.two_exp * n,
            {a: m * n for a, m in self.poly},
        )

    def __truediv__(self, other: "GammaProduct") -> "GammaProduct":
        return self * other**-1

    @property
    def is_gamma_free(self) -> bool:
        return not self.gammas

    def eval(self, s: complex) -> complex:
        """Numeric value via log-gamma; raises near poles."""
        s = complex(s)
        log_total = (
            cmath.log(complex(self.coeff))
            + complex(self.pi_exp) * math.log(math.pi)
            + complex(self.two_exp) * math.log(2.0)
        )
        for a, m in self.poly:
            w = s + a
            if m < 0 and abs(w) < _POLE_TOL:
                raise PoleError(f"pole of (s + {a})^{m} at s = {s}")
            if w == 0:
                return 0.0
            log_total += m * cmath.log(w)
        for kind, a, e in self.gammas:
            w = (s + a) / 2 if kind == "R" else s + a
            near = round(w.real)
            at_pole = near <= 0 and abs(w - near) < _POLE_TOL
            if at_pole:
                if e > 0:
                    raise PoleError(f"Gamma_{kind}(s + {a}) pole at s = {s}")
                return 0.0  # reciprocal of a gamma pole vanishes
            if kind == "R":
                log_total += e * (-(s + a) / 2 * math.log(math.pi) + loggamma(w))
            else:
                log_total += e * (-(s + a) * math.log(2 * math.pi) + loggamma(w))
        return cmath.exp(log_total)

    def __str__(self) -> str:
        parts = []
        if self.coeff != 1:
            parts.append(str(self.coeff))
        if self.two_exp:
            parts.append(f"2^{self.two_exp}")
        if self.pi_exp:
            parts.append(f"pi^{self.pi_exp}")
        for a, m in self.poly:
            base = "s" if a == 0 else f"(s{a:+d})"
            parts.append(base if m == 1 else f"{base}^{m}")
        for kind, a, e in self.gammas:
            arg = "s" if a == 0 else f"s{a:+d}"
            fac = f"Gamma_{kind}({arg})"
            parts.append(fac if e == 1 else f"{fac}^{e}")
        return " * ".join(parts) if parts else "1"


def gamma_R(shift: int = 0, exponent: int = 1) -> GammaProduct:
    return GammaProduct._make({("R", shift): exponent}, 1, 0, 0, {})


def gamma_C(shift: int = 0, exponent: int = 1) -> GammaProduct:
    return GammaProduct._make({("C", shift): exponent}, 1, 0, 0, {})


# ---------------------------------------------------------------------------
# Rewrite rules and normal form
# ---------------------------------------------------------------------------


def duplication_candidates(g: GammaProduct) -> list[int]:
    """Shifts a with Gamma_R(s+a), Gamma_R(s+a+1) exponents of equal sign."""
    d = g._gdict()
    out = []
    for (kind, a), e in d.items():
        if kind != "R":
            continue
        e2 = d.get(("R", a + 1), 0)
        if e * e2 > 0:
            out.append(a)
    return sorted(out)


def apply_duplication(g: GammaProduct, a: int) -> GammaProduct:
    """Gamma_R(s+a)^k Gamma_R(s+a+1)^k -> (2 Gamma_C(s+a))^k for maximal |k|."""
    d = g._gdict()
    e1, e2 = d.get(("R", a), 0), d.get(("R", a + 1), 0)
    if e1 * e2 <= 0:
        return g
    k = min(e1, e2) if e1 > 0 else max(e1, e2)
    _merge(d, ("R", a), -k)
    _merge(d, ("R", a + 1), -k)
    _merge(d, ("C", a), k)
    return GammaProduct._make(d, g.coeff, g.pi_exp, g.two_exp + k, g._pdict())


def shift_candidates(g: GammaProduct) -> list[int]:
    """Gamma_C shifts strictly above the least Gamma_C shift present."""
    shifts = sorted(a for (k, a) in g._gdict() if k == "C")
    return shifts[1:] if len(shifts) > 1 else []


def apply_shift_reduction(g: GammaProduct, a: int) -> GammaProduct:
    """Pull Gamma_C(s+a) down to the least Gamma_C shift via the recurrence."""
    d = g._gdict()
    c_shifts = sorted(b for (k, b) in d if k == "C")
    a_min = c_shifts[0]
    e = d.get(("C", a), 0)
    if a <= a_min or not e:
        return g
    p = g._pdict()
    for b in range(a_min, a):
        _merge(p, b, e)
    _merge(d, ("C", a), -e)
    _merge(d, ("C", a_min), e)
    steps = a - a_min
    return GammaProduct._make(
        d, g.coeff, g.pi_exp - e * steps, g.two_exp - e * steps, p)


def normal_form(g: GammaProduct) -> GammaProduct:
    """Fixed point of the rewrite rules, applied in a deterministic order.

    On the products this package generates (shift window {0, -1}) any
    application order reaches the same form; the deterministic policy is
    lowest-shift-first."""
    while True:
        dups = duplication_candidates(g)
        if dups:
            g = apply_duplication(g, dups[0])
            continue
        shifts = shift_candidates(g)
        if shifts:
            g = apply_shift_reduction(g, shifts[-1])
            continue
        return g


# ---------------------------------------------------------------------------
# Surface gamma factor and Q(s)
# ---------------------------------------------------------------------------


def gamma_p1(r1: int, r2: int) -> GammaProduct:
    """Gamma factor of the completed zeta of the relative projective line:
    the base-field factor at s and s-1."""
    return (gamma_R(0, r1) * gamma_R(-1, r1) * gamma_C(0, r2) * gamma_C(-1, r2))


def gamma_surface(g: int, r1: int, r2: int) -> GammaProduct:
    """Gamma(surface, s) = Gamma(k,s) Gamma(k,s-1) / Gamma(curve H^1, s),
    with the weight-one Hodge recipe Gamma_C(s)^g per real place and
    Gamma_C(s)^{2g} per complex place; returned in normal form."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return normal_form(gamma_p1(r1, r2) * gamma_C(0, -g * (r1 + 2 * r2)))


@dataclass(frozen=True)
class QFactor:
    """Exact monomial Q(s) = coeff * pi^pi_exp * 2^two_exp * (s-1)^m."""

    coeff: Fraction
    pi_exp: Fraction
    two_exp: Fraction
    m: int

    def eval(self, s: complex) -> complex:
        return (
            complex(self.coeff)
            * math.pi ** float(self.pi_exp)
            * 2.0 ** float(self.two_exp)
            * (complex(s) - 1) ** self.m
        )

    def __str__(self) -> str:
        parts = []
        if self.coeff != 1:
            parts.append(str(self.coeff))
        if self.two_exp:
            parts.append(f"2^{self.two_exp}")
        if self.pi_exp:
            parts.append(f"pi^{self.pi_exp}")
        if self.m:
            parts.append(f"(s-1)^{self.m}" if self.m != 1 else "(s-1)")
        return " * ".join(parts) if parts else "1"


def compute_Q(g: int, r1: int, r2: int) -> QFactor:
    """Q(s) := normal_form(Gamma(P^1)^(1-g) / Gamma(surface, s)).

    The result must be gamma-free and a pure monomial in (s - 1); anything
    else signals an inconsistent Hodge recipe.  With the declared
    conventions Q(s) = 2^(-g*r1) * ((s-1)/(2 pi))^(g*(r1+r2))."""
    q = normal_form(gamma_p1(r1, r2) ** (1 - g) / gamma_surface(g, r1, r2))
    if not q.is_gamma_free:
        raise ConventionViolationError(
            f"Q retained gamma factors: {q}; the Hodge recipe is inconsistent")
    if any(a != -1 for a, _ in q.poly):
        raise ConventionViolationError(
            f"Q is not a monomial in (s - 1): {q}")
    m = q.poly[0][1] if q.poly else 0
    return QFactor(q.coeff, q.pi_exp, q.two_exp, m)


def check_Q_symmetry(q: QFactor) -> int:
    """Sign in Q(2 - s) = sign * Q(s): (-1)^m since (2-s-1) = -(s-1)."""
    return -1 if q.m % 2 else 1


def eval_gamma(g: GammaProduct, s: complex) -> complex:
    return g.eval(s)
