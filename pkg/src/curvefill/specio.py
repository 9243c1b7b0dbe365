"""CurveSpec JSON: serializable description of a combinator tree.

Each node is an object with a "kind" tag; polynomials are term lists
[{"c": coefficient, "e": [exponents]}].  parse(serialize(tree)) is the
identity on the tree structure, floats round-trip exactly.
"""

from __future__ import annotations

import json

from .kernel import (AffineImage, Concat, Constant, Curve, HilbertApprox,
                     PointwiseProduct, PolyApply, Polygonal, Polynomial, Rect,
                     Restrict, ScalarMultiple, StructureError, Sum)


def rect_to_list(r: Rect) -> list:
    return [r.x_lo, r.x_hi, r.y_lo, r.y_hi]


def rect_from_list(v) -> Rect:
    if not isinstance(v, (list, tuple)) or len(v) != 4:
        raise StructureError(f"rectangle must be [x_lo, x_hi, y_lo, y_hi], got {v!r}")
    return Rect(*[float(x) for x in v])


def poly_to_dict(p: Polynomial) -> dict:
    return {
        "arity": p.arity,
        "terms": [{"c": c, "e": list(es)} for c, es in p.terms],
        "allow_constant": p.allow_constant_term,
    }


def poly_from_dict(d) -> Polynomial:
    try:
        terms = tuple((t["c"], tuple(t["e"])) for t in d["terms"])
        return Polynomial(terms=terms, arity=int(d["arity"]),
                          allow_constant_term=bool(d.get("allow_constant", True)))
    except (TypeError, KeyError) as exc:
        raise StructureError(f"malformed polynomial spec: {exc}") from exc


def curve_to_dict(c: Curve) -> dict:
    if isinstance(c, Constant):
        return {"kind": "constant", "value": list(c.point)}
    if isinstance(c, Polygonal):
        return {"kind": "polygonal", "ts": list(c.ts),
                "points": [list(p) for p in c.points]}
    if isinstance(c, HilbertApprox):
        return {"kind": "hilbert", "order": c.order,
                "target": rect_to_list(c.target), "orientation": c.orientation}
    if isinstance(c, Concat):
        return {"kind": "concat",
                "pieces": [{"lo": lo, "hi": hi, "curve": curve_to_dict(p)}
                           for lo, hi, p in c.pieces]}
    if isinstance(c, Restrict):
        return {"kind": "restrict", "lo": c.lo, "hi": c.hi,
                "curve": curve_to_dict(c.curve)}
    if isinstance(c, AffineImage):
        return {"kind": "affine", "scale": list(c.scale), "shift": list(c.shift),
                "curve": curve_to_dict(c.curve)}
    if isinstance(c, ScalarMultiple):
        return {"kind": "scale", "c": c.factor, "curve": curve_to_dict(c.curve)}
    if isinstance(c, Sum):
        return {"kind": "sum", "left": curve_to_dict(c.left),
                "right": curve_to_dict(c.right)}
    if isinstance(c, PointwiseProduct):
        return {"kind": "product", "left": curve_to_dict(c.left),
                "right": curve_to_dict(c.right)}
    if isinstance(c, PolyApply):
        return {"kind": "poly", "poly": poly_to_dict(c.poly),
                "curves": [curve_to_dict(x) for x in c.curves]}
    raise StructureError(f"unknown curve node {type(c).__name__}")


def curve_from_dict(d) -> Curve:
    if not isinstance(d, dict) or "kind" not in d:
        raise StructureError(f"curve spec must be an object with a kind, got {d!r}")
    kind = d["kind"]
    try:
        if kind == "constant":
            return Constant(tuple(d["value"]))
        if kind == "polygonal":
            return Polygonal(tuple(d["ts"]), tuple(tuple(p) for p in d["points"]))
        if kind == "hilbert":
            return HilbertApprox(int(d["order"]), rect_from_list(d["target"]),
                                 int(d.get("orientation", 0)))
        if kind == "concat":
            pieces = tuple((p["lo"], p["hi"], curve_from_dict(p["curve"]))
                           for p in d["pieces"])
            return Concat(pieces)
        if kind == "restrict":
            return Restrict(curve_from_dict(d["curve"]), d["lo"], d["hi"])
        if kind == "affine":
            return AffineImage(curve_from_dict(d["curve"]),
                               tuple(d["scale"]), tuple(d["shift"]))
        if kind == "scale":
            return ScalarMultiple(d["c"], curve_from_dict(d["curve"]))
        if kind == "sum":
            return Sum(curve_from_dict(d["left"]), curve_from_dict(d["right"]))
        if kind == "product":
            return PointwiseProduct(curve_from_dict(d["left"]),
                                    curve_from_dict(d["right"]))
        if kind == "poly":
            return PolyApply(poly_from_dict(d["poly"]),
                             tuple(curve_from_dict(x) for x in d["curves"]))
    except (TypeError, KeyError) as exc:
        raise StructureError(f"malformed {kind!r} node: {exc}") from exc
    raise StructureError(f"unknown curve kind {kind!r}")


def dump_curve(c: Curve, path: str, guarantee: dict | None = None) -> None:
    with open(path, "w") as fh:
        json.dump({"curve": curve_to_dict(c), "guarantee": guarantee}, fh, indent=1)
        fh.write("\n")


def load_curve(path: str) -> Curve:
    return load_curve_record(path)[0]


def load_curve_record(path: str):
    """Read a curve file; accepts both wrapped records and bare trees."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict) and "curve" in data:
        return curve_from_dict(data["curve"]), data.get("guarantee")
    return curve_from_dict(data), None
