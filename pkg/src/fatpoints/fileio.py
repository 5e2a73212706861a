"""JSON file formats for point sets, schemes and curves.

Scalars are decimal strings (``"num/den"`` for non-integral rationals) so
that 61-bit residues and exact rationals survive any JSON reader.

Points file::

    {"field": {"kind": "prime", "p": "2305843009213693951"}, "n": 2,
     "points": [["3", "5", "1"], ...]}

Scheme file::

    {"field": ..., "n": 2, "components": [
        {"kind": "double", "point": [...]},
        {"kind": "curvilinear", "point": [...], "direction": [...]},
        {"kind": "simple", "point": [...]}]}

Curve file::

    {"degree": t, "coefficients": [...]}   # monomial_basis(2, t) order
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import FatPointsError
from .exactfield import Field, FieldSpec, field_create
from .geometry import (
    CURVILINEAR,
    CurveForm,
    ProjPoint,
    SchemeComponent,
    ZeroDimScheme,
    proj_point,
)


def _read(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise FatPointsError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise FatPointsError(f"{path}: invalid JSON ({exc})") from None


def _field_of(obj: dict, override: FieldSpec | None) -> Field:
    if override is not None:
        return field_create(override)
    if "field" in obj:
        return field_create(FieldSpec.from_json(obj["field"]))
    return field_create()


def _point(raw, F: Field, n: int) -> ProjPoint:
    if not isinstance(raw, list) or len(raw) != n + 1:
        raise FatPointsError(f"point {raw!r} must have {n + 1} coordinates")
    return proj_point([F.parse(str(x)) for x in raw], F)


def format_point(p: ProjPoint, F: Field) -> list[str]:
    return [F.format(x) for x in p.coords]


def points_to_json(S: list[ProjPoint], F: Field, n: int = 2) -> dict:
    return {"field": F.spec.to_json(), "n": n, "points": [format_point(p, F) for p in S]}


def points_from_json(obj: dict, override: FieldSpec | None = None) -> tuple[Field, list[ProjPoint]]:
    F = _field_of(obj, override)
    n = int(obj.get("n", 2))
    if "points" not in obj:
        raise FatPointsError("points file has no 'points' list")
    return F, [_point(raw, F, n) for raw in obj["points"]]


def load_points(path, override: FieldSpec | None = None):
    return points_from_json(_read(path), override)


def scheme_to_json(Z: ZeroDimScheme) -> dict:
    F = Z.field
    comps = []
    for c in Z.components:
        item = {"kind": c.kind, "point": format_point(c.point, F)}
        if c.kind == CURVILINEAR:
            item["direction"] = format_point(c.direction, F)
        comps.append(item)
    return {"field": F.spec.to_json(), "n": Z.n, "components": comps}


def scheme_from_json(obj: dict, override: FieldSpec | None = None) -> ZeroDimScheme:
    F = _field_of(obj, override)
    n = int(obj.get("n", 2))
    comps = []
    for item in obj.get("components", []):
        kind = item.get("kind")
        p = _point(item.get("point"), F, n)
        direction = _point(item["direction"], F, n) if kind == CURVILINEAR else None
        comps.append(SchemeComponent(kind, p, direction))
    return ZeroDimScheme(tuple(comps), F, n)


def load_scheme(path, override: FieldSpec | None = None) -> ZeroDimScheme:
    return scheme_from_json(_read(path), override)


def curve_to_json(C: CurveForm) -> dict:
    return {"degree": C.degree, "coefficients": [C.field.format(x) for x in C.coefficients]}


def curve_from_json(obj: dict, F: Field, n: int = 2) -> CurveForm:
    try:
        return CurveForm(int(obj["degree"]), tuple(F.parse(str(x)) for x in obj["coefficients"]), F, n)
    except KeyError as exc:
        raise FatPointsError(f"curve file missing {exc}") from None


def load_curve(path, F: Field, n: int = 2) -> CurveForm:
    return curve_from_json(_read(path), F, n)


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
