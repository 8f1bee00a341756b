"""Zeta functions of curves over finite fields.

These are the residue-level global objects attached to fibre components:
a curve is given by its constant-field cardinality q, genus g, and the
integer numerator P(t) of degree 2g with P(0) = 1, so that

    Z(t) = P(t) / ((1 - t)(1 - q t)).

Point counts come from Newton's identities on P (no root extraction),
closed-point counts from Moebius inversion, and the Weil functional
equation P(t) = q^g t^{2g} P(1/(qt)) is checked coefficientwise.  The
Riemann-Roch dimension formulas needed by the summation-formula checker
are implemented for the projective line and elliptic function fields.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, InvalidCurveData, UnsupportedFamilyError
from .exact import LaurentValue, RatFuncX
from .local2d import is_prime_power

PROJECTIVE_LINE = "projective_line"
ELLIPTIC = "elliptic"
GENERIC = "generic"

_FAMILIES = (PROJECTIVE_LINE, ELLIPTIC, GENERIC)


@dataclass(frozen=True)
class CurveFF:
    """Curve over F_q given by genus and zeta numerator coefficients."""

    q: int
    g: int
    P: tuple[int, ...]
    family: str = GENERIC

    def __post_init__(self):
        if not is_prime_power(self.q):
            raise ValueError(f"q = {self.q} is not a prime power")
        if self.g < 0:
            raise ValueError("genus must be nonnegative")
        object.__setattr__(self, "P", tuple(int(c) for c in self.P))
        if len(self.P) != 2 * self.g + 1:
            raise ValueError(f"numerator must have degree {2 * self.g}, got "
                             f"{len(self.P) - 1}")
        if self.P[0] != 1:
            raise ValueError("numerator must have constant term 1")
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def weil_certificate(self) -> bool:
        """Coefficientwise functional equation P(t) = q^g t^{2g} P(1/(qt))."""
        g, q, P = self.g, self.q, self.P
        return all(P[2 * g - i] * q**i == P[i] * q**g for i in range(2 * g + 1))


def projective_line(q: int) -> CurveFF:
    return CurveFF(q, 0, (1,), PROJECTIVE_LINE)


def elliptic_curve(q: int, trace: int) -> CurveFF:
    """Elliptic curve with Frobenius trace a, numerator 1 - a t + q t^2."""
    if trace * trace > 4 * q:
        raise InvalidCurveData(f"trace {trace} violates the Weil bound for q={q}")
    return CurveFF(q, 1, (1, -trace, q), ELLIPTIC)


@dataclass(frozen=True)
class DivisorFF:
    """Divisor data at the level needed for dimension counts."""

    degree: int
    principal: bool = False


def _power_sums(c: CurveFF, nmax: int) -> list[int]:
    """p_n = sum of n-th powers of the inverse roots of P, by Newton."""
    coeffs = c.P
    deg = len(coeffs) - 1
    p: list[int] = []
    for n in range(1, nmax + 1):
        s = -n * coeffs[n] if n <= deg else 0
        for k in range(1, min(n, deg + 1)):
            s -= coeffs[k] * p[n - k - 1]
        p.append(s)
    return p

def point_counts(c: CurveFF, nmax: int) -> list[int]:
    """N_n = #C(F_{q^n}) for n = 1..nmax."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    if not c.weil_certificate:
        raise InvalidCurveData("numerator fails the Weil functional equation")
    sums = _power_sums(c, nmax)
    return [c.q**n + 1 - sums[n - 1] for n in range(1, nmax + 1)]


def closed_point_counts(c: CurveFF, nmax: int) -> list[int]:
    """Number a_n of closed points of degree n, by Moebius inversion."""
    counts = point_counts(c, nmax)
    out: list[int] = []
    for n in range(1, nmax + 1):
        total = 0
        for d in range(1, n + 1):
            if n % d == 0:
                total += _mobius(n // d) * counts[d - 1]
        if total % n:
            raise InvalidCurveData(
                f"degree-{n} closed-point count is not an integer; the "
                "numerator is not a genuine curve numerator")
        a = total // n
        if a < 0:
            raise InvalidCurveData(
                f"negative degree-{n} closed-point count {a}")
        out.append(a)
    return out


def _mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def zeta_closed_form(c: CurveFF) -> tuple[RatFuncX, bool]:
    """Z(t) = P(t)/((1-t)(1-qt)) with X standing for t, plus the functional
    equation certificate (computable even for fake numerators)."""
    num = LaurentValue.zero()
    for k, coef in enumerate(c.P):
        num = num + LaurentValue.term(coef, 0, k)
    den = (LaurentValue.one() - LaurentValue.X()) * \
          (LaurentValue.one() - LaurentValue.term(c.q, 0, 1))
    return RatFuncX(num, den), c.weil_certificate


def zeta_value(c: CurveFF, t: complex) -> complex:
    """Z(t) at a complex argument via the closed form."""
    num = sum(coef * t**k for k, coef in enumerate(c.P))
    den = (1 - t) * (1 - c.q * t)
    if den == 0:
        raise DomainError(f"pole of Z at t = {t}")
    return num / den


def euler_truncated(c: CurveFF, s: complex, deg_max: int) -> complex:
    """Euler product over closed points of degree <= deg_max.

    Converges to Z(q^-s) as deg_max grows; requires Re(s) > 1."""
    if deg_max < 1:
        raise ValueError("deg_max must be >= 1")
    if complex(s).real <= 1:
        raise DomainError("Euler product requires Re(s) > 1")
    a = closed_point_counts(c, deg_max)
    out = 1.0 + 0.0j
    for n in range(1, deg_max + 1):
        out *= (1 - cmath.exp(-n * s * cmath.log(c.q))) ** (-a[n - 1])
    return out


def rr_dim(c: CurveFF, D: DivisorFF) -> int:
    """Riemann-Roch dimension l(D) for the two supported families."""
    deg = D.degree
    if c.family == PROJECTIVE_LINE:
        return max(deg + 1, 0)
    if c.family == ELLIPTIC:
        if deg >= 1:
            return deg
        if deg == 0:
            return 1 if D.principal else 0
        return 0
    raise UnsupportedFamilyError(
        "dimension formulas cover projective_line and elliptic only")


def _canonical_minus(c: CurveFF, D: DivisorFF) -> DivisorFF:
    """K - D: K has degree 2g - 2, and K = 0 in the elliptic case so
    principality is preserved under negation."""
    if c.family == PROJECTIVE_LINE:
        return DivisorFF(-2 - D.degree)
    if c.family == ELLIPTIC:
        return DivisorFF(-D.degree, D.principal)
    raise UnsupportedFamilyError(
        "dimension formulas cover projective_line and elliptic only")


@dataclass(frozen=True)
class SummationReport:
    """Both sides of the Poisson-type summation identity on a lifted box.

    For f = char(t_y^i * lift(box of D)) the identity reads

        LHS = X^i q^{l(D)}   vs   RHS = X^i q^{deg D + 1 - g + l(K - D)}

    and equality is Riemann-Roch."""

    curve: CurveFF
    divisor: DivisorFF
    shift: int
    lhs: LaurentValue
    rhs: LaurentValue
    l_D: int
    l_KD: int
    equal: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "equal", self.lhs == self.rhs)

    def to_dict(self) -> dict:
        return {
            "q": self.curve.q,
            "family": self.curve.family,
            "deg_D": self.divisor.degree,
            "shift": self.shift,
            "l_D": self.l_D,
            "l_K_minus_D": self.l_KD,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
        }


def summation_check(c: CurveFF, D: DivisorFF, shift: int = 0) -> SummationReport:
    """Residue-level shadow of the adelic summation formula."""
    l_D = rr_dim(c, D)
    l_KD = rr_dim(c, _canonical_minus(c, D))
    q = Fraction(c.q)
    lhs = LaurentValue.term(q**l_D, 0, shift)
    rhs = LaurentValue.term(q ** (D.degree + 1 - c.g + l_KD), 0, shift)
    return SummationReport(c, D, shift, lhs, rhs, l_D, l_KD)
