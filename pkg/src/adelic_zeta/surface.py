"""Arithmetic-surface data model and the surface zeta function.

A model consists of base-field invariants, explicit fibre descriptors up to
a prime bound, and the number fields of finitely many horizontal curves.
Fibres hold the smooth models of their irreducible components together with
the degrees of their split ordinary double points; the reduced-fibre zeta
factor is the product of the component zetas corrected by one factor
(1 - q_x^{-s}) per node, since the reduced curve counts each node once
while the normalizations count both branch points.

Nothing is extrapolated: the surface zeta function is the truncated Euler
product over the fibres actually supplied.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .analytic import dedekind_xi, riemann_zeta
from .errors import DomainError, ModelValidationError
from .ffcurves import (CurveFF, PROJECTIVE_LINE, closed_point_counts,
                       zeta_value)
from .gammafactor import compute_Q, eval_gamma, gamma_surface
from .local2d import prime_root


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(sieve[p * p:: p]))
    return [p for p in range(2, n + 1) if sieve[p]]


# ---------------------------------------------------------------------------
# Number field data (base and horizontal curves share the shape)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NumberFieldData:
    """Invariants of the base field or of a horizontal curve's field."""

    label: str
    degree: int
    r1: int
    r2: int
    abs_disc: int
    disc: int | None = None  # None: Q; otherwise a fundamental discriminant

    def __post_init__(self):
        if self.degree != self.r1 + 2 * self.r2:
            raise ModelValidationError(
                f"degree {self.degree} != r1 + 2 r2 = {self.r1 + 2 * self.r2}",
                self.label)
        if self.abs_disc < 1:
            raise ModelValidationError("absolute discriminant must be >= 1",
                                       self.label)
        if self.disc is None:
            if (self.degree, self.r1, self.r2, self.abs_disc) != (1, 1, 0, 1):
                raise ModelValidationError(
                    "rational field must have degree 1, r1=1, r2=0, |d|=1",
                    self.label)
        else:
            from .analytic import is_fundamental_discriminant

            if not is_fundamental_discriminant(self.disc):
                raise ModelValidationError(
                    f"{self.disc} is not a fundamental discriminant", self.label)
            want = (2, 2, 0) if self.disc > 0 else (2, 0, 1)
            if (self.degree, self.r1, self.r2) != want:
                raise ModelValidationError(
                    f"quadratic field signature must be {want}", self.label)
            if self.abs_disc != abs(self.disc):
                raise ModelValidationError(
                    "abs_disc must equal |disc|", self.label)

    @property
    def tag(self):
        return "rational" if self.disc is None else ("quadratic", self.disc)

    def xi(self, s: complex) -> complex:
        return dedekind_xi(self.tag, s)


BaseField = NumberFieldData
HorizontalField = NumberFieldData

RATIONAL_FIELD = NumberFieldData("Q", 1, 1, 0, 1, None)


def quadratic_field(D: int, label: str | None = None) -> NumberFieldData:
    if label is None:
        label = f"Q(sqrt({D}))"
    r1, r2 = (2, 0) if D > 0 else (0, 1)
    return NumberFieldData(label, 2, r1, r2, abs(D), D)


# ---------------------------------------------------------------------------
# Fibres and the surface model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FibreDesc:
    """Reduced fibre over a base prime of residue cardinality p."""

    p: int
    components: tuple[CurveFF, ...]
    nodes: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "nodes", tuple(int(d) for d in self.nodes))
        base, _ = prime_root(self.p)
        if not self.components:
            raise ModelValidationError("fibre needs at least one component",
                                       f"fibre p={self.p}")
        for comp in self.components:
            cb, _ = prime_root(comp.q)
            if cb != base or comp.q < self.p or self._log(comp.q) is None:
                raise ModelValidationError(
                    f"component field size {comp.q} is not a power of {self.p}",
                    f"fibre p={self.p}")
            if not comp.weil_certificate:
                raise ModelValidationError(
                    "component numerator fails the Weil functional equation",
                    f"fibre p={self.p}")
        if any(d < 1 for d in self.nodes):
            raise ModelValidationError("node degrees must be >= 1",
                                       f"fibre p={self.p}")

    def _log(self, q: int) -> int | None:
        d, m = 0, 1
        while m < q:
            m *= self.p
            d += 1
        return d if m == q else None

    @property
    def good(self) -> bool:
        return not self.nodes and len(self.components) == 1

    @property
    def node_exponent(self) -> int:
        """Degree-weighted node count: the conductor exponent at p."""
        return sum(self.nodes)

    @property
    def arithmetic_genus(self) -> int:
        return (sum(c.g for c in self.components) + sum(self.nodes)
                - len(self.components) + 1)


@dataclass(frozen=True)
class SurfaceModel:
    genus: int
    base: NumberFieldData
    fibres: tuple[FibreDesc, ...]
    horizontals: tuple[NumberFieldData, ...] = ()
    p_max: int = 0

    def __post_init__(self):
        fibres = tuple(sorted(self.fibres, key=lambda f: f.p))
        object.__setattr__(self, "fibres", fibres)
        object.__setattr__(self, "horizontals", tuple(self.horizontals))
        if self.genus < 0:
            raise ModelValidationError("genus must be nonnegative", "$.genus")
        if self.p_max <= 0:
            object.__setattr__(
                self, "p_max", max((f.p for f in fibres), default=0))
        seen = set()
        for idx, fd in enumerate(fibres):
            path = f"$.fibres[{idx}] (p={fd.p})"
            # over Q the base primes are exactly the rational primes; over a
            # quadratic base two primes above a split p share q_p = p, so
            # duplicates are legitimate there
            if fd.p in seen and self.base.disc is None:
                raise ModelValidationError("duplicate fibre prime", path)
            seen.add(fd.p)
            if fd.good:
                if fd.components[0].g != self.genus:
                    raise ModelValidationError(
                        f"good fibre genus {fd.components[0].g} != surface "
                        f"genus {self.genus}", path)
            elif fd.arithmetic_genus != self.genus:
                raise ModelValidationError(
                    f"arithmetic genus {fd.arithmetic_genus} != surface "
                    f"genus {self.genus} (components {[c.g for c in fd.components]},"
                    f" nodes {list(fd.nodes)})", path)

    @property
    def is_p1_model(self) -> bool:
        """All fibres are the projective line over the prime field of a
        genus-0 model over Q; the surface zeta then has the closed form
        zeta(s) zeta(s-1)."""
        return (
            self.genus == 0
            and self.base.disc is None
            and all(
                fd.good
                and fd.components[0].family == PROJECTIVE_LINE
                and fd.components[0].q == fd.p
                for fd in self.fibres
            )
        )

    def fibre_at(self, p: int) -> FibreDesc:
        for fd in self.fibres:
            if fd.p == p:
                return fd
        raise DomainError(f"no fibre data at p = {p}")


# ---------------------------------------------------------------------------
# Conductor and zeta
# ---------------------------------------------------------------------------


def conductor_exponents(m: SurfaceModel) -> dict[int, int]:
    return {fd.p: fd.node_exponent for fd in m.fibres if fd.node_exponent}


def conductor(m: SurfaceModel) -> int:
    """A(S) = prod p^(n_p) with n_p the degree-weighted split-node count."""
    out = 1
    for p, n in conductor_exponents(m).items():
        out *= p**n
    return out


def fibre_zeta(fd: FibreDesc, s: complex, deg_max: int | None = None) -> complex:
    """Reduced-fibre zeta: product of component zetas times one factor
    (1 - q_x^{-s}) per split node (two branches, one point identified).

    With deg_max the component zetas run through the truncated Euler
    product (Re(s) > 1); by default the exact closed form is used."""
    out = 1.0 + 0.0j
    for comp in fd.components:
        if deg_max is None:
            out *= zeta_value(comp, cmath.exp(-s * math.log(comp.q)))
        else:
            from .ffcurves import euler_truncated

            out *= euler_truncated(comp, s, deg_max)
    for d in fd.nodes:
        out *= 1 - cmath.exp(-s * d * math.log(fd.p))
    return out


def fibre_closed_point_counts(fd: FibreDesc, nmax: int) -> list[int]:
    """Closed points of the reduced fibre by degree over F_p: component
    points reindexed by their field degree, minus one point per node."""
    out = [0] * nmax
    for comp in fd.components:
        deg = 0
        m = 1
        while m < comp.q:
            m *= fd.p
            deg += 1
        counts = closed_point_counts(comp, nmax // deg) if deg <= nmax else []
        for n, a in enumerate(counts, start=1):
            out[n * deg - 1] += a
    for d in fd.nodes:
        if d <= nmax:
            out[d - 1] -= 1
    if any(a < 0 for a in out):
        raise ModelValidationError(
            f"negative closed-point count on fibre p={fd.p}: {out}",
            f"fibre p={fd.p}")
    return out


def _thread_count() -> int:
    raw = os.environ.get("ADELIC_ZETA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def surface_zeta(m: SurfaceModel, s: complex, p_max: int | None = None,
                 deg_max: int | None = None) -> complex:
    """Truncated Euler product over the supplied fibres with p <= p_max.

    Requires Re(s) > 2 for a stable truncation; the omitted factors are
    bounded via ``surface_zeta_tail_bound``.  Missing fibres over a
    rational base raise."""
    if complex(s).real <= 2:
        raise DomainError("surface zeta truncation requires Re(s) > 2")
    bound = p_max if p_max is not None else m.p_max
    fibres = [fd for fd in m.fibres if fd.p <= bound]
    if m.base.disc is None:
        have = {fd.p for fd in fibres}
        missing = [p for p in primes_upto(bound) if p not in have]
        if missing:
            raise ModelValidationError(
                f"missing fibre data for primes {missing[:8]} <= {bound}",
                "$.fibres")
    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            factors = list(pool.map(lambda fd: fibre_zeta(fd, s, deg_max),
                                    fibres))
    else:
        factors = [fibre_zeta(fd, s, deg_max) for fd in fibres]
    out = 1.0 + 0.0j
    for f in factors:  # fibres are sorted by p: deterministic order
        out *= f
    return out


def surface_zeta_tail_bound(m: SurfaceModel, sigma: float,
                            p_max: int | None = None) -> float:
    """Crude bound on the relative truncation error: the omitted factors
    satisfy |log prod| <= sum_{p > P} (2g + 2) p^(1 - sigma), estimated by
    the integral (2g+2) P^(2-sigma) / ((sigma-2) ln P)."""
    if sigma <= 2:
        raise DomainError("tail bound requires sigma > 2")
    P = p_max if p_max is not None else m.p_max
    if P < 2:
        return math.inf
    log_bound = (2 * m.genus + 2) * P ** (2 - sigma) / ((sigma - 2) * math.log(P))
    return math.expm1(log_bound)


def completed_Z(m: SurfaceModel, s: complex, include_Q: bool = True,
                p_max: int | None = None) -> complex:
    """The completed product

        Z(S, {y_i}, s) = zeta(S, s) A(S)^((1-s)/2) Gamma(S, s) Q(s)
                         prod_i xi(k_i, s/2).

    Q(s) is part of the displayed definition; ``include_Q=False`` drops it
    for comparisons against the convention that keeps Q as an external
    defect factor."""
    s = complex(s)
    if m.is_p1_model:
        zeta_part = riemann_zeta(s) * riemann_zeta(s - 1)
    else:
        zeta_part = surface_zeta(m, s, p_max=p_max)
    A = conductor(m)
    out = zeta_part * cmath.exp((1 - s) / 2 * math.log(A)) if A > 1 else zeta_part
    out *= eval_gamma(gamma_surface(m.genus, m.base.r1, m.base.r2), s)
    if include_Q:
        out *= compute_Q(m.genus, m.base.r1, m.base.r2).eval(s)
    for hf in m.horizontals:
        out *= hf.xi(s / 2)
    return out


def z_callable(m: SurfaceModel, include_Q: bool = True,
               p_max: int | None = None) -> Callable[[complex], complex]:
    """The completed product as a plain callable (for contour work)."""

    def Z(s: complex) -> complex:
        return completed_Z(m, s, include_Q=include_Q, p_max=p_max)

    return Z
