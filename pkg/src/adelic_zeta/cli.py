"""Command-line front end.

Commands: zeta-curve, zeta-surface, conductor, integral, gamma-q, tate,
boundary, meanper, poisson-check, measure.  Output is deterministic: floats
are printed with 17 significant digits, JSON keys are sorted, CSV rows
follow the table order.  Exit codes: 0 success, 1 domain error, 2
validation error, 3 numeric-tolerance failure, 64 usage error.

``--model`` accepts a JSON file path or ``builtin:p1``,
``builtin:elliptic11a``, ``builtin:genus2``.  ``--figdir DIR`` makes the
report commands render a matplotlib figure alongside the delimited output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analytic, ffcurves, gammafactor, measure2d, surface, zeta2d
from .errors import AdelicError, ModelValidationError
from .exact import LaurentValue
from .fixtures import builtin_model
from .local2d import eqchar_field
from .modelfile import load_model

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VALIDATION = 2
EXIT_TOLERANCE = 3
EXIT_USAGE = 64


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


def _json_default(v):
    if isinstance(v, complex):
        return {"re": float(f"{v.real:.17g}"), "im": float(f"{v.imag:.17g}")}
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, LaurentValue):
        return str(v)
    raise TypeError(f"not JSON-serializable: {type(v)}")


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.17g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_floats(v) for v in obj]
    return obj


def emit(rows: list[dict], mode: str, stream=None) -> None:
    """Render a list of records as an aligned table, JSON, or CSV."""
    stream = stream or sys.stdout
    if not rows:
        return
    if mode == "json":
        payload = _round_floats([
            {k: (_json_default(v) if isinstance(v, (complex, Fraction,
                                                    LaurentValue)) else v)
             for k, v in row.items()} for row in rows
        ])
        json.dump(payload, stream, sort_keys=True, indent=2)
        stream.write("\n")
        return
    headers = []
    for row in rows:
        for key in row:
            if key not in headers:
                headers.append(key)
    cells = [[_fmt(r.get(h, "")) for h in headers] for r in rows]
    if mode == "csv":
        stream.write(",".join(headers) + "\n")
        for row in cells:
            stream.write(",".join(row) + "\n")
        return
    widths = [max(len(h), *(len(r[i]) for r in cells))
              for i, h in enumerate(headers)]
    stream.write("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()
                 + "\n")
    for row in cells:
        stream.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
                     + "\n")


def _parse_s(raw: str) -> complex:
    parts = raw.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ModelValidationError("--s expects RE or RE,IM", "--s")


def _load_model(spec: str):
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        try:
            return builtin_model(name)
        except KeyError as exc:
            raise ModelValidationError(str(exc), "--model") from None
    try:
        return load_model(spec)
    except OSError as exc:
        raise ModelValidationError(str(exc), "--model") from None


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------


def cmd_zeta_curve(args) -> int:
    if args.numerator:
        coeffs = tuple(int(c) for c in args.numerator.split(","))
    else:
        coeffs = (1,) if args.genus == 0 else None
    if coeffs is None:
        raise ModelValidationError(
            "--numerator is required for genus > 0", "--numerator")
    family = (ffcurves.PROJECTIVE_LINE if args.genus == 0
              else ffcurves.GENERIC)
    curve = ffcurves.CurveFF(args.q, args.genus, coeffs, family)
    s = _parse_s(args.s)
    closed = ffcurves.zeta_value(curve, complex(args.q) ** (-s))
    rows = [{
        "q": args.q,
        "genus": args.genus,
        "s": s,
        "zeta_closed_form": closed,
        "euler_truncated": ffcurves.euler_truncated(curve, s, args.degmax),
        "weil_certificate": curve.weil_certificate,
    }]
    emit(rows, args.out)
    return EXIT_OK


def cmd_zeta_surface(args) -> int:
    m = _load_model(args.model)
    s = _parse_s(args.s)
    p_max = args.pmax or m.p_max
    rows = []
    partial = 1.0 + 0.0j
    for fd in m.fibres:
        if fd.p > p_max:
            continue
        partial *= surface.fibre_zeta(fd, s, args.degmax)
        rows.append({"p": fd.p, "partial_re": partial.real,
                     "partial_im": partial.imag})
    total = surface.surface_zeta(m, s, p_max=p_max, deg_max=args.degmax)
    bound = surface.surface_zeta_tail_bound(m, complex(s).real, p_max)
    emit([{"s": s, "p_max": p_max, "value": total,
           "relative_tail_bound": bound}], args.out)
    if args.figdir:
        from .plots import zeta_surface_figure

        print(f"figure: {zeta_surface_figure(rows, args.figdir)}",
              file=sys.stderr)
    return EXIT_OK


def cmd_conductor(args) -> int:
    m = _load_model(args.model)
    exps = surface.conductor_exponents(m)
    rows = [{"p": p, "exponent": n} for p, n in sorted(exps.items())]
    rows.append({"p": "A(S)", "exponent": surface.conductor(m)})
    emit(rows, args.out)
    return EXIT_OK


def cmd_integral(args) -> int:
    m = _load_model(args.model)
    s = _parse_s(args.s)
    p_max = args.pmax or m.p_max
    rows = []
    for fd in m.fibres:
        if fd.p > p_max:
            continue
        zeta2d.assert_exponent_cancellation(fd, m.genus)
        val = zeta2d.per_prime_factor(fd, m.genus).eval(s)
        rows.append({"p": fd.p, "good": fd.good,
                     "factor_re": val.real, "factor_im": val.imag})
    assembled = zeta2d.assemble_zeta2(m, s, p_max=p_max,
                                      n_copies=args.copies)
    completed = surface.completed_Z(m, s, p_max=p_max) ** args.copies
    ratio = assembled / completed
    summary = {"p": "total", "good": "", "factor_re": "", "factor_im": "",
               "s": s, "n_copies": args.copies, "assembled": assembled,
               "completed_Z_power": completed,
               "ratio_minus_1": abs(ratio - 1)}
    emit(rows + [summary], args.out)
    if args.figdir:
        from .plots import integral_figure

        print(f"figure: {integral_figure(rows, args.figdir)}", file=sys.stderr)
    if abs(ratio - 1) > args.tol:
        print(f"tolerance failure: |ratio - 1| = {abs(ratio - 1):.3e} > "
              f"{args.tol:.3e}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_gamma_q(args) -> int:
    gs = gammafactor.gamma_surface(args.g, args.r1, args.r2)
    qf = gammafactor.compute_Q(args.g, args.r1, args.r2)
    sign = gammafactor.check_Q_symmetry(qf)
    rows = [{
        "gamma_surface_normal_form": str(gs),
        "Q": str(qf),
        "Q_constant": f"{qf.coeff} * 2^{qf.two_exp} * pi^{qf.pi_exp}",
        "m_derived": qf.m,
        "m_display_convention": (args.r1 + args.r2) * (args.g - 1),
        "m_reciprocal_convention": -qf.m,
        "symmetry_sign": sign,
    }]
    emit(rows, args.out)
    return EXIT_OK


def cmd_tate(args) -> int:
    s = _parse_s(args.s)
    dec = analytic.tate_decompose(s)
    rows = [{
        "s": s,
        "eta_s": dec.eta_s,
        "eta_1_minus_s": dec.eta_reflected,
        "omega": dec.omega,
        "sum": dec.total,
        "xi": dec.xi,
        "residual": dec.residual,
    }]
    emit(rows, args.out)
    return EXIT_TOLERANCE if dec.residual > args.tol else EXIT_OK


def _grid(args) -> list[float]:
    return analytic.log_grid(args.grid_min, args.grid_max, args.grid_points)


def cmd_boundary(args) -> int:
    m = _load_model(args.model)
    contour = analytic.boundary_function(m, c=args.contour)
    if args.x is not None:
        xs = [args.x]
    else:
        xs = _grid(args)
    rows = []
    for x in xs:
        f, est = contour.f_with_estimate(x)
        h = contour.h(x)
        rows.append({
            "x": x, "f": f, "h": h, "frak_h": contour.frak_h(x),
            "antisym_residual": abs(h + contour.h(1 / x) / x),
            "quad_estimate": est,
        })
    emit(rows, args.out)
    if args.figdir:
        from .plots import boundary_figure

        print(f"figure: {boundary_figure(rows, args.figdir)}", file=sys.stderr)
    return EXIT_OK


def cmd_meanper(args) -> int:
    m = _load_model(args.model)
    contour = analytic.boundary_function(m, c=args.contour)
    grid = _grid(args)
    report = analytic.meanper_diagnostic(contour, grid)
    rows = [{"x": x, "h": contour.h(x)} for x in grid]
    emit([report.to_dict()], args.out)
    if args.figdir:
        from .plots import meanper_figure

        print(f"figure: "
              f"{meanper_figure(rows, list(report.singular_values), args.figdir)}",
              file=sys.stderr)
    return EXIT_OK


def cmd_poisson_check(args) -> int:
    if args.family == "p1":
        curve = ffcurves.projective_line(args.q)
    else:
        curve = ffcurves.elliptic_curve(args.q, args.trace)
    rows = []
    all_equal = True
    for deg in range(args.degmin, args.degmax + 1):
        D = ffcurves.DivisorFF(deg, principal=(deg == 0))
        rep = ffcurves.summation_check(curve, D, args.shift)
        rows.append(rep.to_dict())
        all_equal = all_equal and rep.equal
    emit(rows, args.out)
    return EXIT_OK if all_equal else EXIT_TOLERANCE


def cmd_measure(args) -> int:
    field = eqchar_field(args.q, args.d)
    ms = measure2d.MeasSet(())
    boxes = []
    for spec in args.box:
        i, j = (int(v) for v in spec.split(","))
        boxes.append((i, j))
        ms = ms + measure2d.MeasSet.box(field, i, j)
    if not boxes:
        boxes = [(0, 0)]
        ms = measure2d.MeasSet.box(field, 0, 0)
    if args.mode == "multiplicative":
        ms = measure2d.MeasSet(())
        for i, j in boxes:
            ms = ms + measure2d.MeasSet.unit_coset(field, i, j)
        val = measure2d.measure_multiplicative(ms)
        emit([{"q": args.q, "d": args.d, "mode": args.mode,
               "measure": str(val)}], args.out)
        return EXIT_OK
    val = measure2d.measure_additive(ms)
    f = measure2d.SimpleFunction.char(ms) if len(boxes) == 1 else None
    row = {"q": args.q, "d": args.d, "mode": args.mode, "measure": str(val)}
    if f is not None:
        ft = measure2d.fourier_box(f)
        coef, dual = ft.terms[0]
        row["fourier"] = f"{coef} * char({dual.terms[0][1]})"
    emit([row], args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser and dispatch
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, model: bool = False):
    p.add_argument("--out", choices=("table", "json", "csv"), default="table")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=None,
                   help="reserved for property-test replay")
    p.add_argument("--figdir", default=None,
                   help="directory for a rendered figure of the report")
    if model:
        p.add_argument("--model", required=True,
                       help="JSON model file or builtin:<name>")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="adelic-zeta",
        description="zeta integrals, lifted measures, and boundary functions "
                    "for arithmetic surfaces")
    sub = top.add_subparsers(dest="command")

    p = sub.add_parser("zeta-curve", help="zeta of a curve over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--numerator", default=None,
                   help="comma-separated numerator coefficients")
    p.add_argument("--s", required=True)
    p.add_argument("--degmax", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=cmd_zeta_curve)

    p = sub.add_parser("zeta-surface", help="truncated surface zeta")
    p.add_argument("--s", required=True)
    p.add_argument("--pmax", type=int, default=None)
    p.add_argument("--degmax", type=int, default=None)
    _add_common(p, model=True)
    p.set_defaults(func=cmd_zeta_surface)

    p = sub.add_parser("conductor", help="conductor from split-node counts")
    _add_common(p, model=True)
    p.set_defaults(func=cmd_conductor)

    p = sub.add_parser("integral", help="assembled 2m-copy zeta integral")
    p.add_argument("--s", required=True)
    p.add_argument("--pmax", type=int, default=None)
    p.add_argument("--copies", type=int, default=2)
    _add_common(p, model=True)
    p.set_defaults(func=cmd_integral, tol=1e-4)

    p = sub.add_parser("gamma-q", help="surface gamma factor and Q(s)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r1", type=int, default=1)
    p.add_argument("--r2", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_gamma_q)

    p = sub.add_parser("tate", help="one-dimensional zeta decomposition")
    p.add_argument("--s", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_tate)

    p = sub.add_parser("boundary", help="inverse-Mellin boundary functions")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--grid-min", type=float, default=0.125)
    p.add_argument("--grid-max", type=float, default=8.0)
    p.add_argument("--grid-points", type=int, default=33)
    p.add_argument("--contour", type=float, default=3.0)
    _add_common(p, model=True)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("meanper", help="mean-periodicity diagnostics")
    p.add_argument("--grid-min", type=float, default=0.125)
    p.add_argument("--grid-max", type=float, default=8.0)
    p.add_argument("--grid-points", type=int, default=33)
    p.add_argument("--contour", type=float, default=3.0)
    _add_common(p, model=True)
    p.set_defaults(func=cmd_meanper)

    p = sub.add_parser("poisson-check",
                       help="summation-formula (Riemann-Roch) checks")
    p.add_argument("--family", choices=("p1", "elliptic"), default="p1")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--trace", type=int, default=0,
                   help="Frobenius trace (elliptic family)")
    p.add_argument("--degmin", type=int, default=-6)
    p.add_argument("--degmax", type=int, default=6)
    p.add_argument("--shift", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_poisson_check)

    p = sub.add_parser("measure", help="lifted measures of boxes")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--box", action="append", default=[],
                   help="box scales i,j (repeatable)")
    p.add_argument("--mode", choices=("additive", "multiplicative"),
                   default="additive")
    _add_common(p)
    p.set_defaults(func=cmd_measure)

    return top


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ModelValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except AdelicError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
