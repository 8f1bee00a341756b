"""Archimedean numerics.

Completed Dedekind zeta functions with continuation (rational and quadratic
fields), the one-dimensional adelic decomposition xi = eta(s) + eta(1-s) +
omega(s) with its explicit boundary term, inverse-Mellin boundary functions
on a vertical contour, and mean-periodicity diagnostics.

The Riemann zeta evaluator uses the accelerated alternating series of
Cohen, Rodriguez Villegas and Zagier (reflected into Re(s) >= 1/2), with an
Euler-Maclaurin fallback near the zeros of 1 - 2^(1-s) where the eta
quotient loses precision.  Dirichlet L-functions are assembled from Hurwitz
zeta values; the pole terms are summed before dividing by (s - 1) so the
cancellation for non-principal characters is stable.

Contour defaults: abscissa c = 3, height and node counts adaptive until the
integrand has decayed below ``rel_tail`` times its on-axis value.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import loggamma

from .errors import DomainError, PoleError
from .gammafactor import gamma_C, gamma_R

_POLE_TOL = 1e-8

# B_2 .. B_24, used by the Euler-Maclaurin tails.
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
    Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
    Fraction(854513, 138), Fraction(-236364091, 2730),
]


class TruncationWarning(UserWarning):
    """The contour was cut off before the integrand decayed."""


# ---------------------------------------------------------------------------
# Riemann zeta
# ---------------------------------------------------------------------------


@lru_cache(maxsize=32)
def _cvz_weights(n: int) -> tuple[int, ...]:
    """d_0..d_n for the alternating-series acceleration (exact integers:
    d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!))."""
    term = Fraction(1)
    d = term
    ds = [d]
    for i in range(1, n + 1):
        term *= Fraction(4 * (n + i - 1) * (n - i + 1), (2 * i) * (2 * i - 1))
        d += term
        ds.append(d)
    assert all(v.denominator == 1 for v in ds)
    return tuple(v.numerator for v in ds)


def _eta_cvz(s: complex, n: int) -> complex:
    """eta(s) = sum (-1)^(k-1) k^(-s) by CVZ acceleration with n terms."""
    d = _cvz_weights(n)
    dn = d[n]
    total = 0.0 + 0.0j
    sign = 1
    for k in range(1, n + 1):
        total += sign * (dn - d[k - 1]) * cmath.exp(-s * math.log(k))
        sign = -sign
    return total / dn


def _zeta_em(s: complex, N: int = 36, J: int = 12) -> complex:
    """Euler-Maclaurin evaluation of zeta, valid for Re(s) > -(2J - 1)."""
    total = sum(cmath.exp(-s * math.log(k)) for k in range(1, N))
    total += cmath.exp((1 - s) * math.log(N)) / (s - 1)
    total += 0.5 * cmath.exp(-s * math.log(N))
    rising = s
    for j in range(1, J + 1):
        b = float(_BERNOULLI[j - 1]) / math.factorial(2 * j)
        total += b * rising * cmath.exp(-(s + 2 * j - 1) * math.log(N))
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total


def riemann_zeta(s: complex) -> complex:
    """zeta(s) on the evaluation window, pole at s = 1 raised."""
    s = complex(s)
    if abs(s - 1) < _POLE_TOL:
        raise PoleError("zeta has its pole at s = 1")
    if s.real < 0.5:
        # reflection zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
        return (
            2**s
            * math.pi ** (s - 1)
            * cmath.sin(math.pi * s / 2)
            * cmath.exp(loggamma(1 - s))
            * riemann_zeta(1 - s)
        )
    denom = 1 - cmath.exp((1 - s) * math.log(2))
    if abs(denom) < 1e-3:
        return _zeta_em(s)
    n = 72 + int(1.3 * abs(s.imag))
    return _eta_cvz(s, n) / denom


# ---------------------------------------------------------------------------
# Dirichlet characters and quadratic L-functions
# ---------------------------------------------------------------------------


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D / n)."""
    if n == 0:
        return 1 if D in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if D < 0:
            sign = -sign
    if n % 2 == 0:
        if D % 2 == 0:
            return 0
        table = {1: 1, 7: 1, 3: -1, 5: -1}
        while n % 2 == 0:
            n //= 2
            sign *= table[D % 8]
    a = D % n
    # Jacobi symbol (a / n) for odd n > 0
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1 or D == 0:
        return False

    def squarefree(m: int) -> bool:
        m = abs(m)
        k = 2
        while k * k <= m:
            if m % (k * k) == 0:
                return False
            k += 1
        return True

    if D % 4 == 1:
        return squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


def _hurwitz_em(s: complex, a: float, N: int = 36, J: int = 12) -> complex:
    """Hurwitz zeta(s, a) without its pole term (the (M+a)^(1-s)/(s-1)
    contribution is returned separately by the caller)."""
    total = sum(cmath.exp(-s * math.log(k + a)) for k in range(N))
    M = N + a
    total += 0.5 * cmath.exp(-s * math.log(M))
    rising = s
    for j in range(1, J + 1):
        b = float(_BERNOULLI[j - 1]) / math.factorial(2 * j)
        total += b * rising * cmath.exp(-(s + 2 * j - 1) * math.log(M))
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total


def dirichlet_L(s: complex, D: int) -> complex:
    """L(s, chi_D) for a fundamental discriminant D, Re(s) > -20 or so."""
    if not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a fundamental discriminant")
    s = complex(s)
    q = abs(D)
    N = 36
    chars = [kronecker_symbol(D, r) for r in range(1, q + 1)]
    main = 0.0 + 0.0j
    for r, ch in enumerate(chars, start=1):
        if ch:
            main += ch * _hurwitz_em(s, r / q, N=N)
    # Pole terms sum_r chi(r) (N + r/q)^(1-s) / (s-1).  chi is non-principal
    # so sum chi(r) = 0 and the sum equals sum chi(r) (e^(-wL_r) - 1)/w with
    # w = s - 1, each summand evaluated stably.
    w = s - 1
    pole = 0.0 + 0.0j
    for r, ch in enumerate(chars, start=1):
        if not ch:
            continue
        L = math.log(N + r / q)
        if abs(w * L) < 0.5:
            acc = 0.0 + 0.0j
            power = 1.0 + 0.0j
            for k in range(1, 30):
                power *= -w * L / k
                acc += power
            pole += ch * acc / w
        else:
            pole += ch * (cmath.exp(-w * L) - 1) / w
    return (main + pole) * cmath.exp(-s * math.log(q))


# ---------------------------------------------------------------------------
# Completed Dedekind zeta
# ---------------------------------------------------------------------------

FieldTag = object  # "rational" or ("quadratic", D)


def _normalize_tag(tag) -> tuple[str, int | None]:
    if tag == "rational" or tag is None:
        return ("rational", None)
    if isinstance(tag, tuple) and len(tag) == 2 and tag[0] == "quadratic":
        return ("quadratic", int(tag[1]))
    if isinstance(tag, int):
        return ("quadratic", tag)
    raise DomainError(f"unknown field tag {tag!r}")


def dedekind_xi(tag, s: complex) -> complex:
    """Completed Dedekind zeta: pi^(-s/2) Gamma(s/2) zeta(s) over Q, and
    |d|^(s/2) gamma_k(s) zeta(s) L(s, chi_D) for quadratic fields; satisfies
    xi(s) = xi(1 - s) and has simple poles at 0 and 1."""
    kind, D = _normalize_tag(tag)
    s = complex(s)
    if min(abs(s), abs(s - 1)) < _POLE_TOL:
        raise PoleError(f"completed zeta has poles at 0 and 1 (s = {s})")
    if s.real < 0.5:
        return dedekind_xi(tag, 1 - s)
    if kind == "rational":
        return gamma_R().eval(s) * riemann_zeta(s)
    if not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a fundamental discriminant")
    gam = gamma_R(0, 2) if D > 0 else gamma_C()
    return (
        cmath.exp(s / 2 * math.log(abs(D)))
        * gam.eval(s)
        * riemann_zeta(s)
        * dirichlet_L(s, D)
    )


# ---------------------------------------------------------------------------
# Tate decomposition over Q
# ---------------------------------------------------------------------------


def theta_tail(x: float) -> float:
    """omega_theta(x) = sum_{n >= 1} exp(-pi n^2 x)."""
    total = 0.0
    n = 1
    while True:
        term = math.exp(-math.pi * n * n * x)
        total += term
        if term < 1e-22:
            return total
        n += 1


@lru_cache(maxsize=8)
def _theta_quad_nodes(nodes: int = 20, x_max: float = 30.0):
    """Panelized Gauss-Legendre nodes on [1, x_max], finer near 1."""
    edges = [1.0]
    step = 0.5
    while edges[-1] < 6.0:
        edges.append(edges[-1] + step)
    while edges[-1] < x_max:
        edges.append(min(edges[-1] + 1.0, x_max))
    u, w = leggauss(nodes)
    xs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = (a + b) / 2, (b - a) / 2
        xs.extend(mid + half * u)
        ws.extend(half * w)
    xs_arr = np.array(xs)
    theta = np.array([theta_tail(x) for x in xs_arr])
    return xs_arr, np.array(ws), theta


def tate_eta(s: complex) -> complex:
    """eta(s) = int_1^inf omega_theta(x) x^(s/2) dx / x (entire in s)."""
    xs, ws, theta = _theta_quad_nodes()
    expo = np.exp((complex(s) / 2 - 1) * np.log(xs))
    return complex(np.sum(ws * theta * expo))


@dataclass(frozen=True)
class TateDecomposition:
    s: complex
    eta_s: complex
    eta_reflected: complex  # eta(1 - s)
    omega: complex          # -1/s - 1/(1-s)
    xi: complex             # completed zeta, for cross-checking

    @property
    def total(self) -> complex:
        return self.eta_s + self.eta_reflected + self.omega

    @property
    def residual(self) -> float:
        return abs(self.total - self.xi)


def tate_decompose(s: complex) -> TateDecomposition:
    """Decompose xi(Q, s) = eta(s) + eta(1-s) + omega(s), where the boundary
    term omega is the Laplace transform of h(x) = -(1 - x^{-1})."""
    s = complex(s)
    if min(abs(s), abs(s - 1)) < _POLE_TOL:
        raise PoleError("decomposition undefined at the poles 0, 1")
    omega = -1 / s - 1 / (1 - s)
    return TateDecomposition(
        s, tate_eta(s), tate_eta(1 - s), omega, dedekind_xi("rational", s))


# ---------------------------------------------------------------------------
# Inverse Mellin contour machinery
# ---------------------------------------------------------------------------


class MellinContour:
    """Sampled vertical contour for inverse Mellin transforms.

    Samples Z(c + it) once on adaptive Gauss-Legendre panels; afterwards
    every evaluation of

        f(x) = (1 / 2 pi) int_{-T}^{T} Z(c + it) x^(-c - it) dt

    is a vectorized inner product.  A half-node quadrature is kept for node
    error estimates, and the outermost panel pair for height estimates.
    """

    def __init__(
        self,
        Z: Callable[[complex], complex],
        c: float = 3.0,
        rel_tail: float = 1e-12,
        panel_width: float = 2.0,
        nodes: int = 16,
        t_cap: float = 400.0,
        model=None,
    ):
        self.Z = Z
        self.model = model
        self.c = float(c)
        self.nodes = int(nodes)
        z0 = abs(Z(complex(c, 0.0))) or 1.0
        u_f, w_f = leggauss(nodes)
        u_c, w_c = leggauss(max(nodes // 2, 4))
        ts_f, ws_f, ts_c, ws_c = [], [], [], []
        edge = 0.0
        panel_tail = 0.0
        while True:
            nxt = edge + panel_width
            for sgn in (1.0, -1.0):
                mid, half = sgn * (edge + nxt) / 2, sgn * (nxt - edge) / 2
                ts_f.extend(mid + half * u_f)
                ws_f.extend(abs(half) * w_f)
                ts_c.extend(mid + half * u_c)
                ws_c.extend(abs(half) * w_c)
            edge = nxt
            decayed = abs(Z(complex(c, edge))) < rel_tail * z0
            if decayed or edge >= t_cap:
                if not decayed:
                    warnings.warn(
                        f"contour truncated at T = {edge:.1f} before the "
                        "integrand decayed", TruncationWarning)
                break
        self.t_max = edge
        self._t_f = np.array(ts_f)
        self._w_f = np.array(ws_f)
        self._Z_f = np.array([Z(complex(c, t)) for t in self._t_f])
        self._t_c = np.array(ts_c)
        self._w_c = np.array(ws_c)
        self._Z_c = np.array([Z(complex(c, t)) for t in self._t_c])
        self.node_count = len(self._t_f)
        self.samples: dict[float, float] = {}

    def _quad(self, x: float, t, w, zs) -> float:
        phase = np.exp(-1j * t * math.log(x))
        val = np.sum(w * zs * phase) * x ** (-self.c) / (2 * math.pi)
        return float(val.real)

    def f(self, x: float) -> float:
        """Inverse Mellin transform at x > 0."""
        if x <= 0:
            raise DomainError("inverse Mellin transform needs x > 0")
        if x not in self.samples:
            self.samples[x] = self._quad(x, self._t_f, self._w_f, self._Z_f)
        return self.samples[x]

    def f_with_estimate(self, x: float) -> tuple[float, float]:
        val = self.f(x)
        coarse = self._quad(x, self._t_c, self._w_c, self._Z_c)
        # height sensitivity: contribution of the outermost panel pair
        outer = self.t_max * 0.9
        mask = np.abs(self._t_f) >= outer
        tail = abs(np.sum(self._w_f[mask] * self._Z_f[mask])) \
            * x ** (-self.c) / (2 * math.pi)
        return val, abs(val - coarse) + float(tail)

    def h(self, x: float) -> float:
        """Boundary function h(x) = f(x) - x^(-1) f(1/x)."""
        return self.f(x) - self.f(1.0 / x) / x

    def frak_h(self, x: float) -> float:
        """Adelic boundary function x^(-1/2) h(x)."""
        return self.h(x) / math.sqrt(x)


def inverse_mellin(
    Z: Callable[[complex], complex],
    c: float,
    x: float,
    T: float | None = None,
    nodes: int = 16,
) -> tuple[float, float]:
    """One-shot inverse Mellin transform with an error estimate obtained by
    node halving plus the outer-panel contribution.  An explicit T fixes the
    truncation height (no decay check); otherwise the height is adaptive."""
    if T is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            contour = MellinContour(Z, c=c, nodes=nodes, rel_tail=0.0,
                                    t_cap=T, panel_width=min(2.0, T / 2))
    else:
        contour = MellinContour(Z, c=c, nodes=nodes)
    return contour.f_with_estimate(x)


def mellin_forward(
    f: Callable[[float], float],
    s: complex,
    u_min: float = -16.0,
    u_max: float = 4.5,
    panel_width: float = 0.5,
    nodes: int = 16,
) -> complex:
    """Forward Mellin transform int_0^inf f(x) x^s dx/x on a log grid."""
    u, w = leggauss(nodes)
    total = 0.0 + 0.0j
    edge = u_min
    s = complex(s)
    while edge < u_max - 1e-12:
        nxt = min(edge + panel_width, u_max)
        mid, half = (edge + nxt) / 2, (nxt - edge) / 2
        for ui, wi in zip(u, w):
            uu = mid + half * ui
            total += half * wi * f(math.exp(uu)) * cmath.exp(s * uu)
        edge = nxt
    return total


# ---------------------------------------------------------------------------
# Boundary functions of a surface model
# ---------------------------------------------------------------------------


def boundary_function(model, c: float = 3.0, include_Q: bool = True,
                      **kwargs) -> MellinContour:
    """Contour object for the completed product of a surface model."""
    from .surface import z_callable  # runtime import, no cycle

    return MellinContour(z_callable(model, include_Q=include_Q), c=c,
                         model=model, **kwargs)


def _as_contour(obj) -> MellinContour:
    if isinstance(obj, MellinContour):
        return obj
    return boundary_function(obj)


def boundary_h(model_or_contour, x: float) -> float:
    """h(x) = f(x) - x^(-1) f(1/x) for the model's completed product."""
    return _as_contour(model_or_contour).h(x)


def frak_h(model_or_contour, x: float) -> float:
    """Adelic boundary function x^(-1/2) h(x)."""
    return _as_contour(model_or_contour).frak_h(x)


# ---------------------------------------------------------------------------
# Mean-periodicity diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeanPeriodicityReport:
    """Heuristic diagnostics; the singular-value tail carries no pass/fail
    semantics, it only indicates how far the translates are from spanning."""

    antisymmetry_max: float
    growth_rate: float
    growth_intercept: float
    growth_residual: float
    singular_values: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "antisymmetry_max": self.antisymmetry_max,
            "growth_rate": self.growth_rate,
            "growth_intercept": self.growth_intercept,
            "growth_residual": self.growth_residual,
            "singular_values": list(self.singular_values),
        }


def meanper_diagnostic(h: Callable[[float], float] | object,
                       grid: Sequence[float]) -> MeanPeriodicityReport:
    """Diagnostics over a grid of positive points:

    (a) max |h(x) + x^(-1) h(1/x)|, the antisymmetry residual;
    (b) least-squares exponential-growth fit of h(e^(-u)) for u > 0;
    (c) singular values of the translate matrix [h(x_i / x_j)]."""
    if not callable(h):
        contour = _as_contour(h)
        h = contour.h
    xs = [float(x) for x in grid]
    if not xs or any(x <= 0 for x in xs):
        raise DomainError("grid must consist of positive points")

    hx = {x: h(x) for x in set(xs) | {1.0 / x for x in xs}}
    antisym = max(abs(hx[x] + hx[1.0 / x] / x) for x in xs)

    us, logs = [], []
    for x in xs:
        if x < 1.0 and abs(hx[x]) > 1e-300:
            us.append(-math.log(x))
            logs.append(math.log(abs(hx[x])))
    if len(us) >= 2:
        coeffs = np.polyfit(us, logs, 1)
        rate, intercept = float(coeffs[0]), float(coeffs[1])
        resid = max(abs(np.polyval(coeffs, u) - v) for u, v in zip(us, logs))
    else:
        rate = intercept = resid = 0.0

    mat = np.empty((len(xs), len(xs)))
    for i, xi in enumerate(xs):
        for j, yj in enumerate(xs):
            ratio = xi / yj
            if ratio not in hx:
                hx[ratio] = h(ratio)
            mat[i, j] = hx[ratio]
    if np.allclose(mat, 0.0):
        svals = tuple(0.0 for _ in xs)
    else:
        svals = tuple(float(v) for v in np.linalg.svd(mat, compute_uv=False))

    return MeanPeriodicityReport(antisym, rate, intercept, resid, svals)


def log_grid(lo: float, hi: float, n: int) -> list[float]:
    """n logarithmically spaced points on [lo, hi]."""
    if lo <= 0 or hi <= lo or n < 2:
        raise DomainError("need 0 < lo < hi and n >= 2")
    return [float(v) for v in np.exp(np.linspace(math.log(lo), math.log(hi), n))]
