"""Lifted R((X))-valued measure on a two-dimensional local field.

The measurable sets modeled here are the shift-free boxes

    B(i, j) = t2^i t1^j O_F,

their finite signed combinations, and the unit cosets t2^i t1^j O_F^x that
arise as a box minus its maximal sub-box.  In the rank-2 value group a box
is the up-set {w >= (j, i)}, so any two boxes are nested; a signed
combination is a genuine set exactly when its corner-indicator prefix sums
stay in {0, 1}.  Translated generators (alpha + t2^j p^{-1}(S)) are
deliberately unrepresentable: every integral computed downstream uses
shift-free characteristic functions, and dropping shifts removes the need
for phase-tagged Fourier data.

Normalization is self-dual: mu(O_F) = q^(d/2) for conductor exponent d, so
mu(O_F) = 1 when d = 0, and the Fourier transform of box functions is an
involution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .errors import SetAlgebraError
from .exact import LaurentValue, QHalf, Rank2Val
from .local2d import Local2DField

Mode = Literal["additive", "multiplicative"]


@dataclass(frozen=True)
class Box:
    """The scaled integral box t2^i t1^j O_F."""

    field: Local2DField
    i: int = 0
    j: int = 0

    @property
    def corner(self) -> Rank2Val:
        return Rank2Val(self.j, self.i)

    def scaled(self, di: int, dj: int) -> "Box":
        return Box(self.field, self.i + di, self.j + dj)

    def __str__(self) -> str:
        parts = []
        if self.i:
            parts.append(f"t2^{self.i}" if self.i != 1 else "t2")
        if self.j:
            parts.append(f"t1^{self.j}" if self.j != 1 else "t1")
        parts.append("O")
        return "".join(parts)


def box_measure(b: Box) -> LaurentValue:
    """mu(t2^i t1^j O_F) = X^i * q^(d/2 - j)."""
    if not b.field.is_eqchar:
        raise SetAlgebraError("boxes of archimedean fields are not measured here")
    return LaurentValue.term(1, b.field.d - 2 * b.j, b.i)


@dataclass(frozen=True)
class MeasSet:
    """Finite signed combination of boxes over one field.

    The combination must normalize to a disjoint union to be measurable;
    scales are automatically nested, so validity is a prefix-sum condition
    on the indicator function over the rank-2 chain.
    """

    terms: tuple[tuple[int, Box], ...] = ()

    @staticmethod
    def box(field: Local2DField, i: int = 0, j: int = 0) -> "MeasSet":
        return MeasSet(((1, Box(field, i, j)),))

    @staticmethod
    def unit_coset(field: Local2DField, i: int = 0, j: int = 0) -> "MeasSet":
        """t2^i t1^j O^x, expressed as B(i, j) - B(i, j+1)."""
        return MeasSet(((1, Box(field, i, j)), (-1, Box(field, i, j + 1))))

    def __add__(self, other: "MeasSet") -> "MeasSet":
        return MeasSet(self.terms + other.terms)

    def __sub__(self, other: "MeasSet") -> "MeasSet":
        return MeasSet(self.terms + tuple((-c, b) for c, b in other.terms))

    def scaled(self, di: int, dj: int) -> "MeasSet":
        """Image under multiplication by t2^di t1^dj."""
        return MeasSet(tuple((c, b.scaled(di, dj)) for c, b in self.terms))

    @property
    def field(self) -> Local2DField:
        if not self.terms:
            raise SetAlgebraError("empty set expression has no field")
        f = self.terms[0][1].field
        for _, b in self.terms:
            if b.field != f:
                raise SetAlgebraError("mixed fields in one set expression")
        return f

    def _corner_coeffs(self) -> list[tuple[tuple[int, int], int]]:
        """Net coefficient per corner, sorted by the rank-2 order (i dominant)."""
        acc: dict[tuple[int, int], int] = {}
        for c, b in self.terms:
            key = (b.i, b.j)
            acc[key] = acc.get(key, 0) + c
        return sorted(((k, v) for k, v in acc.items() if v), key=lambda kv: kv[0])

    def validate(self) -> None:
        """Check the expression normalizes to a disjoint union."""
        _ = self.field
        prefix = 0
        for _, coef in self._corner_coeffs():
            prefix += coef
            if prefix not in (0, 1):
                raise SetAlgebraError(
                    "set expression does not normalize to a disjoint union "
                    f"(indicator reaches {prefix})"
                )

    def unit_coset_scales(self) -> list[tuple[int, int]]:
        """Decompose into unit cosets, returning their (i, j) scales."""
        corners = self._corner_coeffs()
        if not corners:
            return []
        self.validate()
        out: list[tuple[int, int]] = []
        prefix = 0
        for idx, ((i, j), coef) in enumerate(corners):
            prefix += coef
            if prefix == 1:
                if idx + 1 >= len(corners) or corners[idx + 1][0] != (i, j + 1):
                    raise SetAlgebraError(
                        f"set is not a union of unit cosets: run starting at "
                        f"t2^{i} t1^{j} does not close at t1-scale {j + 1}"
                    )
                out.append((i, j))
        if prefix != 0:
            raise SetAlgebraError("set is not a union of unit cosets: "
                                  "unbounded box tail")
        return out


def measure_additive(s: MeasSet) -> LaurentValue:
    """Lifted additive measure, extended by additivity over a valid
    disjoint-union expression."""
    s.validate()
    total = LaurentValue.zero()
    for c, b in s.terms:
        total = total + box_measure(b).scale(c)
    return total


def measure_multiplicative(s: MeasSet) -> LaurentValue:
    """Multiplicative measure of a union of unit cosets: each coset has
    measure q^(d/2) independently of its scale (the additive measure divided
    by (1 - q^-1) times the constant module on the coset)."""
    scales = s.unit_coset_scales()
    d = s.field.d
    return LaurentValue.term(len(scales), d) if scales else LaurentValue.zero()


# ---------------------------------------------------------------------------
# Simple functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleFunction:
    """Finite linear combination sum_k c_k * char(S_k)."""

    terms: tuple[tuple[LaurentValue, MeasSet], ...] = ()

    @staticmethod
    def char(s: MeasSet) -> "SimpleFunction":
        return SimpleFunction(((LaurentValue.one(), s),))

    @staticmethod
    def combination(*pairs) -> "SimpleFunction":
        out = []
        for coef, s in pairs:
            if not isinstance(coef, LaurentValue):
                if isinstance(coef, QHalf):
                    coef = LaurentValue.from_qhalf(coef)
                else:
                    coef = LaurentValue.term(Fraction(coef))
            out.append((coef, s))
        return SimpleFunction(tuple(out))

    def __add__(self, other: "SimpleFunction") -> "SimpleFunction":
        return SimpleFunction(self.terms + other.terms)

    def scale(self, c: LaurentValue) -> "SimpleFunction":
        return SimpleFunction(tuple((coef * c, s) for coef, s in self.terms))


def integrate_simple(f: SimpleFunction, mode: Mode = "additive") -> LaurentValue:
    """Integral of a simple function: the linear combination of measures."""
    measure = measure_additive if mode == "additive" else measure_multiplicative
    total = LaurentValue.zero()
    for coef, s in f.terms:
        total = total + coef * measure(s)
    return total


def _plain_box(s: MeasSet) -> Box:
    if len(s.terms) != 1 or s.terms[0][0] != 1:
        raise SetAlgebraError("Fourier transform requires characteristic "
                              "functions of plain boxes")
    return s.terms[0][1]


def fourier_box(f: SimpleFunction) -> SimpleFunction:
    """Fourier transform w.r.t. the fixed character of conductor exponent d:

        char(t2^i t1^j O)  ->  mu(t2^i t1^j O) * char(t2^-i t1^(d-j) O),

    extended linearly.  On boxes the double transform is the identity."""
    out: list[tuple[LaurentValue, MeasSet]] = []
    for coef, s in f.terms:
        b = _plain_box(s)
        dual = MeasSet.box(b.field, -b.i, b.field.d - b.j)
        out.append((coef * box_measure(b), dual))
    return SimpleFunction(tuple(out))
