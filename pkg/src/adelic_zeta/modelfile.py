"""Surface-description files.

A model is a JSON document:

    {
      "genus": 2,
      "p_max": 200,
      "base": {"label": "Q", "degree": 1, "r1": 1, "r2": 0,
               "abs_disc": 1, "dedekind": "rational"},
      "fibres": [
        {"p": 2,
         "components": [{"q": 2, "genus": 2,
                         "numerator": [1, 2, 5, 4, 4],
                         "family": "generic"}],
         "nodes": []},
        ...
      ],
      "horizontals": [ {...same shape as base...} ]
    }

``dedekind`` is either the string "rational" or {"quadratic": D} with D a
fundamental discriminant.  Loading validates the schema and the model
invariants with JSON-path error locations; load -> serialize -> load is the
identity.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ModelValidationError
from .ffcurves import CurveFF
from .surface import FibreDesc, NumberFieldData, SurfaceModel


def _expect(cond: bool, msg: str, path: str):
    if not cond:
        raise ModelValidationError(msg, path)


def _get(d: dict, key: str, types, path: str, default=_expect):
    if key not in d:
        if default is not _expect:
            return default
        raise ModelValidationError(f"missing required key {key!r}", path)
    v = d[key]
    _expect(isinstance(v, types), f"{key!r} must be {types}", f"{path}.{key}")
    return v


def _field_from_dict(d: Any, path: str) -> NumberFieldData:
    _expect(isinstance(d, dict), "field descriptor must be an object", path)
    label = _get(d, "label", str, path)
    degree = _get(d, "degree", int, path)
    r1 = _get(d, "r1", int, path)
    r2 = _get(d, "r2", int, path)
    abs_disc = _get(d, "abs_disc", int, path)
    raw = _get(d, "dedekind", (str, dict), path, default="rational")
    if raw == "rational":
        disc = None
    elif isinstance(raw, dict) and set(raw) == {"quadratic"} \
            and isinstance(raw["quadratic"], int):
        disc = raw["quadratic"]
    else:
        raise ModelValidationError(
            "dedekind must be \"rational\" or {\"quadratic\": D}",
            f"{path}.dedekind")
    try:
        return NumberFieldData(label, degree, r1, r2, abs_disc, disc)
    except ModelValidationError as exc:
        raise ModelValidationError(exc.message, path) from None


def _field_to_dict(f: NumberFieldData) -> dict:
    return {
        "label": f.label,
        "degree": f.degree,
        "r1": f.r1,
        "r2": f.r2,
        "abs_disc": f.abs_disc,
        "dedekind": "rational" if f.disc is None else {"quadratic": f.disc},
    }


def _curve_from_dict(d: Any, path: str) -> CurveFF:
    _expect(isinstance(d, dict), "component must be an object", path)
    q = _get(d, "q", int, path)
    g = _get(d, "genus", int, path)
    num = _get(d, "numerator", list, path)
    _expect(all(isinstance(c, int) for c in num),
            "numerator must be a list of integers", f"{path}.numerator")
    family = _get(d, "family", str, path, default="generic")
    try:
        return CurveFF(q, g, tuple(num), family)
    except ValueError as exc:
        raise ModelValidationError(str(exc), path) from None


def _curve_to_dict(c: CurveFF) -> dict:
    return {"q": c.q, "genus": c.g, "numerator": list(c.P), "family": c.family}


def model_from_dict(doc: Any, path: str = "$") -> SurfaceModel:
    _expect(isinstance(doc, dict), "model must be a JSON object", path)
    genus = _get(doc, "genus", int, path)
    p_max = _get(doc, "p_max", int, path, default=0)
    base = _field_from_dict(_get(doc, "base", dict, path), f"{path}.base")
    raw_fibres = _get(doc, "fibres", list, path)
    fibres = []
    for i, fd in enumerate(raw_fibres):
        fpath = f"{path}.fibres[{i}]"
        _expect(isinstance(fd, dict), "fibre must be an object", fpath)
        p = _get(fd, "p", int, fpath)
        comps_raw = _get(fd, "components", list, fpath)
        comps = [
            _curve_from_dict(c, f"{fpath}.components[{j}]")
            for j, c in enumerate(comps_raw)
        ]
        nodes = _get(fd, "nodes", list, fpath, default=[])
        _expect(all(isinstance(n, int) for n in nodes),
                "nodes must be a list of integer degrees", f"{fpath}.nodes")
        try:
            fibres.append(FibreDesc(p, tuple(comps), tuple(nodes)))
        except ModelValidationError as exc:
            raise ModelValidationError(exc.message, fpath) from None
    raw_h = _get(doc, "horizontals", list, path, default=[])
    horizontals = [
        _field_from_dict(h, f"{path}.horizontals[{i}]")
        for i, h in enumerate(raw_h)
    ]
    return SurfaceModel(genus, base, tuple(fibres), tuple(horizontals), p_max)


def model_to_dict(m: SurfaceModel) -> dict:
    return {
        "genus": m.genus,
        "p_max": m.p_max,
        "base": _field_to_dict(m.base),
        "fibres": [
            {
                "p": fd.p,
                "components": [_curve_to_dict(c) for c in fd.components],
                "nodes": list(fd.nodes),
            }
            for fd in m.fibres
        ],
        "horizontals": [_field_to_dict(h) for h in m.horizontals],
    }


def load_model(path: str) -> SurfaceModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelValidationError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                f"{exc.msg}", "$") from None
    return model_from_dict(doc)


def save_model(m: SurfaceModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(m), fh, indent=2, sort_keys=True)
        fh.write("\n")
