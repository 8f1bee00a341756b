"""Builtin surface models.

Three models cover the desk-scale checks:

  p1_model          the relative projective line over Q
  elliptic_model    a conductor-11 elliptic surface (good fibres from direct
                    point counts of y^2 + y = x^3 - x^2 - 10x - 20, one
                    split node of degree 1 over p = 11)
  genus2_model      a synthetic genus-2 model over Q whose good-fibre
                    numerators are products of two elliptic numerators
                    counted from fixed Weierstrass curves, with a nodal
                    fibre at p = 11 (elliptic component plus one node)

The numerators are generated by exhaustive point counts over F_p and
F_{p^2}; fibres whose product numerator fails the closed-point positivity
screen fall back to the supersingular square (1 + p t^2)^2.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InvalidCurveData
from .ffcurves import CurveFF, ELLIPTIC, GENERIC, closed_point_counts, \
    projective_line
from .surface import (FibreDesc, RATIONAL_FIELD, SurfaceModel, primes_upto)

# Long Weierstrass coefficients (a1, a2, a3, a4, a6).
CURVE_11A = (0, -1, 1, -10, -20)   # conductor 11, split node at 11
CURVE_37A = (0, 0, 1, -1, 0)       # conductor 37


def _gf_elements(p: int, n: int):
    """Elements of F_{p^n} as polynomials modulo a found irreducible."""
    if n == 1:
        return list(range(p)), None
    # find an irreducible monic quadratic x^2 - bx - c by exhaustion
    assert n == 2
    for b in range(p):
        for c in range(p):
            if all((x * x - b * x - c) % p for x in range(p)):
                elems = [(u, v) for u in range(p) for v in range(p)]
                return elems, (b, c)
    raise AssertionError(f"no irreducible quadratic over F_{p}")


def _count_points_f_p(coeffs: tuple[int, ...], p: int) -> int:
    """#E(F_p) for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""
    a1, a2, a3, a4, a6 = (c % p for c in coeffs)
    count = 1  # point at infinity
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        lin = (a1 * x + a3) % p
        for y in range(p):
            if (y * y + lin * y - rhs) % p == 0:
                count += 1
    return count


def _count_points_f_p2(coeffs: tuple[int, ...], p: int) -> int:
    """#E(F_{p^2}) by exhaustion in F_p[t]/(t^2 - b t - c)."""
    a1, a2, a3, a4, a6 = (c % p for c in coeffs)
    elems, (b, c) = _gf_elements(p, 2)

    def mul(u, v):
        # (u0 + u1 t)(v0 + v1 t) with t^2 = b t + c
        w0 = (u[0] * v[0] + u[1] * v[1] * c) % p
        w1 = (u[0] * v[1] + u[1] * v[0] + u[1] * v[1] * b) % p
        return (w0, w1)

    def add(u, v):
        return ((u[0] + v[0]) % p, (u[1] + v[1]) % p)

    def smul(k, u):
        return ((k * u[0]) % p, (k * u[1]) % p)

    count = 1
    for x in elems:
        x2 = mul(x, x)
        rhs = add(add(mul(x2, x), smul(a2, x2)), add(smul(a4, x), (a6, 0)))
        lin = add(smul(a1, x), (a3, 0))
        for y in elems:
            lhs = add(mul(y, y), mul(lin, y))
            if lhs == rhs:
                count += 1
    return count


@lru_cache(maxsize=None)
def elliptic_trace(coeffs: tuple[int, ...], p: int) -> int:
    """Frobenius trace a_p = p + 1 - #E(F_p) by direct enumeration."""
    return p + 1 - _count_points_f_p(coeffs, p)


def _count_hyperelliptic(h: tuple[int, ...], f: tuple[int, ...], p: int,
                         n: int) -> int:
    """#C(F_{p^n}), n <= 2, for y^2 + h(x) y = f(x) with one point at
    infinity (deg f = 5), by exhaustion."""
    if n == 1:
        count = 1
        for x in range(p):
            fx = 0
            for c in reversed(f):
                fx = (fx * x + c) % p
            hx = 0
            for c in reversed(h):
                hx = (hx * x + c) % p
            for y in range(p):
                if (y * y + hx * y - fx) % p == 0:
                    count += 1
        return count
    elems, (b, c) = _gf_elements(p, 2)

    def mul(u, v):
        w0 = (u[0] * v[0] + u[1] * v[1] * c) % p
        w1 = (u[0] * v[1] + u[1] * v[0] + u[1] * v[1] * b) % p
        return (w0, w1)

    def add(u, v):
        return ((u[0] + v[0]) % p, (u[1] + v[1]) % p)

    def horner(coeffs, x):
        acc = (0, 0)
        for cf in reversed(coeffs):
            acc = add(mul(acc, x), (cf % p, 0))
        return acc

    count = 1
    for x in elems:
        fx = horner(f, x)
        hx = horner(h, x)
        for y in elems:
            if add(mul(y, y), mul(hx, y)) == fx:
                count += 1
    return count


def _genus2_curve_mod_p(p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(h, f) for a smooth genus-2 hyperelliptic curve over F_p."""
    if p == 2:
        return (1,), (0, 0, 0, 0, 0, 1)  # y^2 + y = x^5, Artin-Schreier
    for bshift in range(p):
        f = (1 + bshift, p - 1, 0, 0, 0, 1)  # x^5 - x + (1 + bshift)
        if _is_squarefree_mod_p(f, p):
            return (0,), f
    raise AssertionError(f"no squarefree quintic found over F_{p}")


def _is_squarefree_mod_p(f: tuple[int, ...], p: int) -> bool:
    fp = tuple(k * c % p for k, c in enumerate(f))[1:]
    return _poly_gcd_degree(f, fp, p) == 0


def _poly_gcd_degree(a, b, p: int) -> int:
    def trim(v):
        v = list(c % p for c in v)
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            coef = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, cb in enumerate(b):
                a[i + shift] = (a[i + shift] - coef * cb) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1 if a else -1


@lru_cache(maxsize=None)
def _genus2_counted_numerator(p: int) -> tuple[int, ...]:
    """Numerator of an honestly counted genus-2 curve over F_p: N_1 and N_2
    determine the degree-4 numerator through the functional equation."""
    h, f = _genus2_curve_mod_p(p)
    n1 = _count_hyperelliptic(h, f, p, 1)
    n2 = _count_hyperelliptic(h, f, p, 2)
    c1 = n1 - (p + 1)
    c2, rem = divmod(n2 - (p * p + 1) + c1 * c1, 2)
    assert rem == 0
    return (1, c1, c2, p * c1, p * p)


def _product_numerator(p: int, t1: int, t2: int) -> tuple[int, ...]:
    """(1 - t1 t + p t^2)(1 - t2 t + p t^2) expanded."""
    a = (1, -t1, p)
    b = (1, -t2, p)
    out = [0] * 5
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return tuple(out)


def _genus2_numerator(p: int) -> tuple[int, ...]:
    """Product of the two reference elliptic numerators when that passes the
    closed-point positivity screen (it always does once p is large enough
    for the Weil bounds to dominate); small primes where the formal product
    is not genuine curve data fall back to an honestly counted curve."""
    t1 = elliptic_trace(CURVE_11A, p)
    t2 = elliptic_trace(CURVE_37A, p)
    cand = _product_numerator(p, t1, t2)
    try:
        closed_point_counts(CurveFF(p, 2, cand, GENERIC), 24)
        return cand
    except InvalidCurveData:
        return _genus2_counted_numerator(p)


@lru_cache(maxsize=None)
def p1_model(p_max: int = 100) -> SurfaceModel:
    """The relative projective line over Q, fibres for p <= p_max."""
    fibres = tuple(FibreDesc(p, (projective_line(p),))
                   for p in primes_upto(p_max))
    return SurfaceModel(0, RATIONAL_FIELD, fibres, (), p_max)


@lru_cache(maxsize=None)
def elliptic_model(p_max: int = 50) -> SurfaceModel:
    """Conductor-11 elliptic surface over Q: good fibres carry the counted
    numerators, the fibre at 11 is a projective line crossing itself at one
    split node of degree 1."""
    fibres = []
    for p in primes_upto(p_max):
        if p == 11:
            fibres.append(FibreDesc(11, (projective_line(11),), (1,)))
        else:
            t = elliptic_trace(CURVE_11A, p)
            fibres.append(FibreDesc(p, (CurveFF(p, 1, (1, -t, p), ELLIPTIC),)))
    return SurfaceModel(1, RATIONAL_FIELD, tuple(fibres), (), p_max)


@lru_cache(maxsize=None)
def genus2_model(p_max: int = 200,
                 horizontals: tuple = (RATIONAL_FIELD,)) -> SurfaceModel:
    """Synthetic genus-2 model over Q with one nodal fibre at p = 11:
    an elliptic component (counted trace) with a single degree-1 node, so
    the arithmetic genus is 1 + 1 - 1 + 1 = 2 and the conductor is 11."""
    fibres = []
    for p in primes_upto(p_max):
        if p == 11:
            t = elliptic_trace(CURVE_37A, 11)
            comp = CurveFF(11, 1, (1, -t, 11), ELLIPTIC)
            fibres.append(FibreDesc(11, (comp,), (1,)))
        else:
            fibres.append(FibreDesc(p, (CurveFF(p, 2, _genus2_numerator(p)),)))
    return SurfaceModel(2, RATIONAL_FIELD, tuple(fibres), tuple(horizontals),
                        p_max)


ELLIPTIC_F5 = CurveFF(5, 1, (1, 3, 5), ELLIPTIC)  # y^2 = x^3 + x + 1 over F_5


BUILTIN_MODELS = {
    "p1": p1_model,
    "elliptic11a": elliptic_model,
    "genus2": genus2_model,
}


def builtin_model(name: str, p_max: int | None = None) -> SurfaceModel:
    if name not in BUILTIN_MODELS:
        raise KeyError(f"unknown builtin model {name!r}; choose from "
                       f"{sorted(BUILTIN_MODELS)}")
    factory = BUILTIN_MODELS[name]
    return factory(p_max) if p_max else factory()
