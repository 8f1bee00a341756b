"""Two-dimensional local field descriptors and monomial elements.

A nonarchimedean equal-characteristic field is described by the cardinality
q of its final residue field and the conductor exponent d of its fixed
additive character; archimedean fields (R((t)), C((t))) carry no q.  Field
elements are modeled by monomial representatives t2^i * t1^j * u only: the
simple functions we integrate are combinations of characteristic functions
of monomially scaled boxes, so general unit factors never influence a
measure or a module.  In particular zero is not representable, which makes
the undefined-valuation case unreachable by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .exact import LaurentValue, Rank2Val

EQCHAR = "eqchar"
ARCH_REAL = "arch_real"
ARCH_COMPLEX = "arch_complex"

_KINDS = (EQCHAR, ARCH_REAL, ARCH_COMPLEX)


def prime_root(n: int) -> tuple[int, int]:
    """Decompose a prime power as (p, k) with n = p**k."""
    if n < 2:
        raise ValueError(f"{n} is not a prime power")
    for p in range(2, n + 1):
        if p * p > n:
            p = n
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"{n} is not a prime power")
            return p, k
    raise ValueError(f"{n} is not a prime power")


def is_prime_power(n: int) -> bool:
    try:
        prime_root(n)
        return True
    except ValueError:
        return False


@dataclass(frozen=True)
class Local2DField:
    """Descriptor of a two-dimensional local field K_{x,z}.

    ``q`` is the cardinality of the second residue field (eqchar only) and
    ``d`` the conductor exponent of the fixed character: the conductor is
    t1^d * O_F, the orthogonal complement of O_F.
    """

    kind: str = EQCHAR
    q: int | None = None
    d: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == EQCHAR:
            if self.q is None or not is_prime_power(self.q):
                raise ValueError("eqchar fields need a prime-power residue "
                                 f"cardinality, got q={self.q!r}")
        elif self.q is not None:
            raise ValueError("archimedean fields carry no residue cardinality")

    @property
    def is_eqchar(self) -> bool:
        return self.kind == EQCHAR


def eqchar_field(q: int, d: int = 0) -> Local2DField:
    return Local2DField(EQCHAR, q, d)


@dataclass(frozen=True)
class Element2D:
    """Monomial representative t2^i * t1^j * u of a field element."""

    i: int = 0
    j: int = 0
    unit_tag: str = "1"

    def __mul__(self, other: "Element2D") -> "Element2D":
        if self.unit_tag == "1":
            tag = other.unit_tag
        elif other.unit_tag == "1":
            tag = self.unit_tag
        else:
            tag = f"{self.unit_tag}*{other.unit_tag}"
        return Element2D(self.i + other.i, self.j + other.j, tag)

    def inverse(self) -> "Element2D":
        tag = "1" if self.unit_tag == "1" else f"({self.unit_tag})^-1"
        return Element2D(-self.i, -self.j, tag)

    def __str__(self) -> str:
        parts = []
        if self.i:
            parts.append("t2" if self.i == 1 else f"t2^{self.i}")
        if self.j:
            parts.append("t1" if self.j == 1 else f"t1^{self.j}")
        if self.unit_tag != "1" or not parts:
            parts.append(self.unit_tag)
        return "*".join(parts)


def t1(j: int = 1) -> Element2D:
    return Element2D(0, j)


def t2(i: int = 1) -> Element2D:
    return Element2D(i, 0)


ONE = Element2D()


@dataclass(frozen=True)
class PointData:
    """A closed point on a fibre: its local field plus the degree over the
    base residue field, so q(x,z) = q_p ** deg."""

    field: Local2DField
    deg: int = 1

    def __post_init__(self):
        if self.deg < 1:
            raise ValueError("point degree must be >= 1")


def rank2_valuation(e: Element2D) -> Rank2Val:
    """Rank-2 valuation of t2^i t1^j u: the pair (j, i)."""
    return Rank2Val(e.j, e.i)


def module_value(field: Local2DField, e: Element2D) -> LaurentValue:
    """R((X))-valued module |t2^i t1^j u| = q^(-j) * X^i."""
    if not field.is_eqchar:
        raise DomainError("the R((X))-valued module applies to eqchar fields;"
                          " archimedean modules live in the analytic layer")
    return LaurentValue.term(1, -2 * e.j, e.i)


def module_power_symbolic(field: Local2DField, e: Element2D):
    """Symbolic |t2^i t1^j u|^s = q^(-j*s) * X^(i*s) as a QSExpr."""
    from .zeta2d import QSExpr  # local import: zeta2d depends on this module

    if not field.is_eqchar:
        raise DomainError("symbolic modules apply to eqchar fields")
    expr = QSExpr.one()
    if e.j:
        expr = expr * QSExpr.q_power(field.q, -e.j, 0)
    if e.i:
        expr = expr * QSExpr.x_power(e.i, 0)
    return expr
