"""Exact arithmetic substrate for lifted measures.

Every value produced by the measure and zeta-integral machinery lies in the
Q-span of monomials q^(e/2) * X^i, where q is a context prime power kept
formal and X is the formal variable of R((X)).  Three layers are provided:

  QHalf        sum of r * q^(e/2) with r rational and e integer, i.e. a
               Laurent polynomial in q^(1/2) over Q
  LaurentValue finite sum of QHalf * X^i, i integer, the codomain of the
               lifted measure
  RatFuncX     quotient of two LaurentValues, closing the geometric series
               that zeta factors produce

plus ``Rank2Val``, the value group Z^2 with the lexicographic order in
which the second component (the t2-order) dominates.

All values are immutable and canonical: no zero terms are stored, exponents
are unique, and rationals are reduced.  Arithmetic is exact; numeric
specialization of X and q is available through ``eval``.

Canonical text rendering follows the grammar

    3/2*q^(1/2)*X^-1 + 1

with terms sorted by X-exponent ascending, then q-exponent ascending.
``LaurentValue.parse`` accepts the same grammar.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Literal, Union

from .errors import DomainError, PoleError

Rat = Fraction

EvalMode = Literal["exact", "float"]

_RatLike = Union[int, Fraction]


def _as_rat(v: _RatLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


def _sqrt_exact(v: Fraction) -> Fraction | None:
    """Exact square root of a positive rational, or None."""
    if v <= 0:
        return None
    rn, rd = math.isqrt(v.numerator), math.isqrt(v.denominator)
    if rn * rn == v.numerator and rd * rd == v.denominator:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# QHalf: Laurent polynomials in q^(1/2)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QHalf:
    """Sum of r * q^(e/2) terms; ``terms`` maps are stored as sorted tuples
    of (e, r) with e integer, r a nonzero Fraction."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    @staticmethod
    def _norm(items: Iterable[tuple[int, Fraction]]) -> "QHalf":
        acc: dict[int, Fraction] = {}
        for e, r in items:
            acc[e] = acc.get(e, Fraction(0)) + r
        return QHalf(tuple(sorted((e, r) for e, r in acc.items() if r != 0)))

    @staticmethod
    def of(r: _RatLike, e: int = 0) -> "QHalf":
        """The monomial r * q^(e/2)."""
        r = _as_rat(r)
        if r == 0:
            return QHalf()
        return QHalf(((e, r),))

    @staticmethod
    def zero() -> "QHalf":
        return QHalf()

    @staticmethod
    def one() -> "QHalf":
        return QHalf.of(1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "QHalf") -> "QHalf":
        return QHalf._norm(self.terms + other.terms)

    def __neg__(self) -> "QHalf":
        return QHalf(tuple((e, -r) for e, r in self.terms))

    def __sub__(self, other: "QHalf") -> "QHalf":
        return self + (-other)

    def __mul__(self, other: "QHalf") -> "QHalf":
        return QHalf._norm(
            (ea + eb, ra * rb) for ea, ra in self.terms for eb, rb in other.terms
        )

    def scale(self, r: _RatLike) -> "QHalf":
        r = _as_rat(r)
        if r == 0:
            return QHalf()
        return QHalf(tuple((e, c * r) for e, c in self.terms))

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_rational(self) -> bool:
        return all(e == 0 for e, _ in self.terms)

    def as_rational(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_rational:
            raise DomainError(f"{self} is not a pure rational")
        return self.terms[0][1]

    def inverse_monomial(self) -> "QHalf":
        if not self.is_monomial:
            raise DomainError("only monomials have an exact inverse")
        e, r = self.terms[0]
        return QHalf.of(Fraction(1) / r, -e)

    def eval(self, q0: _RatLike, mode: EvalMode = "exact"):
        """Specialize q to the positive rational ``q0``."""
        q0 = _as_rat(q0)
        if q0 <= 0:
            raise DomainError("q must be specialized to a positive value")
        root = _sqrt_exact(q0)
        needs_root = any(e % 2 for e, _ in self.terms)
        if mode == "exact":
            if needs_root and root is None:
                raise DomainError(
                    f"q = {q0} is not a perfect square; use float mode for "
                    "half-integer exponents"
                )
            total = Fraction(0)
            for e, r in self.terms:
                k, rem = divmod(e, 2)
                total += r * q0**k * (root**rem if rem else 1)
            return total
        qf = float(q0)
        return math.fsum(float(r) * qf ** (e / 2) for e, r in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_render_term(r, e, 0) for e, r in self.terms)


# ---------------------------------------------------------------------------
# LaurentValue: finite sums of QHalf * X^i
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentValue:
    """Element of R((X)) with finite support and QHalf coefficients."""

    terms: tuple[tuple[int, QHalf], ...] = ()

    @staticmethod
    def _norm(items: Iterable[tuple[int, QHalf]]) -> "LaurentValue":
        acc: dict[int, QHalf] = {}
        for i, c in items:
            acc[i] = acc.get(i, QHalf()) + c
        return LaurentValue(tuple(sorted((i, c) for i, c in acc.items() if c)))

    @staticmethod
    def zero() -> "LaurentValue":
        return LaurentValue()

    @staticmethod
    def one() -> "LaurentValue":
        return LaurentValue.term(1)

    @staticmethod
    def term(r: _RatLike, qexp_half: int = 0, xexp: int = 0) -> "LaurentValue":
        """The monomial r * q^(qexp_half/2) * X^xexp."""
        c = QHalf.of(r, qexp_half)
        if not c:
            return LaurentValue()
        return LaurentValue(((xexp, c),))

    @staticmethod
    def X(i: int = 1) -> "LaurentValue":
        return LaurentValue.term(1, 0, i)

    @staticmethod
    def from_qhalf(c: QHalf, xexp: int = 0) -> "LaurentValue":
        if not c:
            return LaurentValue()
        return LaurentValue(((xexp, c),))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "LaurentValue") -> "LaurentValue":
        return LaurentValue._norm(self.terms + other.terms)

    def __neg__(self) -> "LaurentValue":
        return LaurentValue(tuple((i, -c) for i, c in self.terms))

    def __sub__(self, other: "LaurentValue") -> "LaurentValue":
        return self + (-other)

    def __mul__(self, other: "LaurentValue") -> "LaurentValue":
        return LaurentValue._norm(
            (ia + ib, ca * cb)
            for ia, ca in self.terms
            for ib, cb in other.terms
        )

    def __pow__(self, n: int) -> "LaurentValue":
        if n < 0:
            raise DomainError("negative powers require RatFuncX")
        out = LaurentValue.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: QHalf | _RatLike) -> "LaurentValue":
        if not isinstance(c, QHalf):
            c = QHalf.of(c)
        return LaurentValue._norm((i, t * c) for i, t in self.terms)

    def coefficient(self, i: int) -> QHalf:
        for j, c in self.terms:
            if j == i:
                return c
        return QHalf()

    @property
    def lowest_exponent(self) -> int:
        if not self.terms:
            raise DomainError("zero value has no lowest exponent")
        return self.terms[0][0]

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1].is_monomial

    def shift(self, k: int) -> "LaurentValue":
        """Multiply by X^k."""
        return LaurentValue(tuple((i + k, c) for i, c in self.terms))

    def eval(self, x0: _RatLike, q0: _RatLike = 1, mode: EvalMode = "exact"):
        """Specialize X = x0 and q = q0."""
        x0 = _as_rat(x0)
        if mode == "exact":
            total = Fraction(0)
            for i, c in self.terms:
                if i < 0 and x0 == 0:
                    raise DomainError("negative X-exponent at X = 0")
                total += c.eval(q0, mode) * x0**i
            return total
        xf = float(x0)
        out = 0.0
        for i, c in self.terms:
            if i < 0 and xf == 0.0:
                raise DomainError("negative X-exponent at X = 0")
            out += c.eval(q0, "float") * xf**i
        return out

    def __str__(self) -> str:
        return render_value(self)

    @staticmethod
    def parse(text: str) -> "LaurentValue":
        return parse_value(text)


# ---------------------------------------------------------------------------
# Canonical text rendering and parsing
# ---------------------------------------------------------------------------


def _render_qpower(e: int) -> str:
    if e == 0:
        return ""
    if e % 2 == 0:
        h = e // 2
        return "q" if h == 1 else f"q^{h}"
    return f"q^({e}/2)"


def _render_xpower(i: int) -> str:
    if i == 0:
        return ""
    return "X" if i == 1 else f"X^{i}"


def _render_term(r: Fraction, e: int, i: int) -> str:
    parts = [p for p in (_render_qpower(e), _render_xpower(i)) if p]
    mag = abs(r)
    if mag != 1 or not parts:
        parts.insert(0, str(mag))
    body = "*".join(parts)
    return body if r > 0 else "-" + body


def render_value(v: LaurentValue) -> str:
    flat = [(i, e, r) for i, c in v.terms for e, r in c.terms]
    if not flat:
        return "0"
    flat.sort(key=lambda t: (t[0], t[1]))
    out = _render_term(flat[0][2], flat[0][1], flat[0][0])
    for i, e, r in flat[1:]:
        joiner = " + " if r > 0 else " - "
        out += joiner + _render_term(abs(r), e, i)
    return out


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<rat>\d+(?:/\d+)?)
      | (?P<q>q(?:\^(?:\((?P<qe_paren>-?\d+(?:/2)?)\)|(?P<qe>-?\d+)))?)
      | (?P<x>X(?:\^(?P<xe>-?\d+))?)
      | (?P<op>[+\-*])
    )\s*""",
    re.VERBOSE,
)


def parse_value(text: str) -> LaurentValue:
    """Parse the canonical grammar, e.g. ``3/2*q^(1/2)*X^-1 + 1``."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse value at ...{text[pos:pos + 12]!r}")
        tokens.append(m)
        pos = m.end()

    terms: list[tuple[int, QHalf]] = []
    sign = 1
    cur: dict | None = None

    def flush():
        nonlocal cur, sign
        if cur is not None:
            r = cur["r"] * sign
            terms.append((cur["x"], QHalf.of(r, cur["e"])))
        cur = None
        sign = 1

    def ensure_term() -> dict:
        nonlocal cur
        if cur is None:
            cur = {"r": Fraction(1), "e": 0, "x": 0}
        return cur

    expect_factor = True
    for tok in tokens:
        if tok.group("op"):
            op = tok.group("op")
            if op == "*":
                if cur is None:
                    raise ValueError("misplaced '*'")
                expect_factor = True
            else:
                if expect_factor and cur is None:
                    # leading sign of a term
                    if op == "-":
                        sign = -sign
                    continue
                flush()
                sign = -1 if op == "-" else 1
                expect_factor = True
            continue
        t = ensure_term()
        if tok.group("rat"):
            t["r"] *= Fraction(tok.group("rat"))
        elif tok.group("q"):
            qe = tok.group("qe_paren") or tok.group("qe")
            if qe is None:
                t["e"] += 2
            elif qe.endswith("/2"):
                t["e"] += int(qe[:-2])
            else:
                t["e"] += 2 * int(qe)
        elif tok.group("x"):
            xe = tok.group("xe")
            t["x"] += 1 if xe is None else int(xe)
        expect_factor = False
    flush()
    return LaurentValue._norm(terms)


# ---------------------------------------------------------------------------
# RatFuncX
# ---------------------------------------------------------------------------


def _canonicalize(num: LaurentValue, den: LaurentValue):
    if not den:
        raise DomainError("zero denominator")
    if not num:
        return LaurentValue.zero(), LaurentValue.one()
    k = den.lowest_exponent
    if k:
        num, den = num.shift(-k), den.shift(-k)
    lead = den.coefficient(0)
    # The canonical form asks for leading coefficient 1; this is exact only
    # when the lead is a q-monomial, which covers every zeta-factor
    # denominator (products of 1 - c*X^k terms).
    if lead.is_monomial and lead != QHalf.one():
        inv = lead.inverse_monomial()
        num, den = num.scale(inv), den.scale(inv)
    return num, den


@dataclass(frozen=True)
class RatFuncX:
    """Quotient of LaurentValues; canonical form has denominator with lowest
    exponent 0 and (monomial) leading coefficient 1."""

    num: LaurentValue
    den: LaurentValue = LaurentValue.one()

    def __post_init__(self):
        num, den = _canonicalize(self.num, self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def from_value(v: LaurentValue) -> "RatFuncX":
        return RatFuncX(v, LaurentValue.one())

    def __add__(self, other: "RatFuncX") -> "RatFuncX":
        return RatFuncX(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def __neg__(self) -> "RatFuncX":
        return RatFuncX(-self.num, self.den)

    def __sub__(self, other: "RatFuncX") -> "RatFuncX":
        return self + (-other)

    def __mul__(self, other: "RatFuncX") -> "RatFuncX":
        return RatFuncX(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFuncX") -> "RatFuncX":
        if not other.num:
            raise DomainError("division by zero rational function")
        return RatFuncX(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFuncX):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def eval(self, x0: _RatLike, q0: _RatLike = 1, mode: EvalMode = "exact"):
        d = self.den.eval(x0, q0, mode)
        if d == 0:
            raise PoleError(f"pole of rational function at X = {x0}")
        return self.num.eval(x0, q0, mode) / d

    def __str__(self) -> str:
        if self.den == LaurentValue.one():
            return str(self.num)
        return f"({self.num})/({self.den})"


# ---------------------------------------------------------------------------
# Rank-2 values
# ---------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class Rank2Val:
    """Value in Z^2, ordered lexicographically with v2 (the t2-order)
    dominant: this is the unique orientation for which the rank-2 ring of
    integers is a valuation ring."""

    v1: int
    v2: int

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.v2, self.v1)

    def __lt__(self, other: "Rank2Val") -> bool:
        return self.sort_key < other.sort_key

    def __add__(self, other: "Rank2Val") -> "Rank2Val":
        return Rank2Val(self.v1 + other.v1, self.v2 + other.v2)

    def __neg__(self) -> "Rank2Val":
        return Rank2Val(-self.v1, -self.v2)


def rank2_compare(a: Rank2Val, b: Rank2Val) -> str:
    """Compare two rank-2 values; returns 'lt', 'eq' or 'gt'."""
    if a.sort_key < b.sort_key:
        return "lt"
    if a.sort_key == b.sort_key:
        return "eq"
    return "gt"
