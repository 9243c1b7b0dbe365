"""Command-line front end.

Subcommands are pure file-in/file-out: gen writes a curve record from a
named construction, combine applies combinators to existing records, and
verify/content/classify/nikolskii write JSON reports.  Exit codes: 0 ok,
1 usage error, 2 verification failed, 3 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions as cons
from . import verification as ver
from .generators import (filler_with_endpoints, hilbert, polygonal,
                         polygonal_approximation)
from .kernel import (AffineImage, Constant, Curve, CurveError, Rect, Restrict,
                     ScalarMultiple, StructureError, UNIT_SQUARE, add, concat,
                     multiply, poly_apply)
from .polyparse import parse_polynomial
from .specio import (curve_from_dict, curve_to_dict, dump_curve,
                     load_curve_record, rect_from_list)
from .svg import render_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_MALFORMED = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_rect(text: str) -> Rect:
    parts = [float(v) for v in text.split(",")]
    return rect_from_list(parts)


def _parse_point(text: str):
    x, y = (float(v) for v in text.split(","))
    return (x, y)


def _params(ns) -> dict:
    if not ns.params:
        return {}
    p = json.loads(ns.params)
    if not isinstance(p, dict):
        raise StructureError("--params must be a JSON object")
    return p


def _breakpoints(p: dict) -> cons.Breakpoints:
    if "breakpoints" in p:
        return cons.Breakpoints(tuple(p["breakpoints"]))
    count = int(p.get("count", 8))
    style = p.get("style", "dyadic")
    if style == "dyadic":
        return cons.Breakpoints.dyadic(count)
    if style == "harmonic":
        return cons.Breakpoints.harmonic(count)
    raise StructureError(f"unknown breakpoint style {style!r}")


def _emit(ns, payload: dict) -> None:
    text = json.dumps(payload, indent=1) + "\n"
    if getattr(ns, "out", None):
        with open(ns.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_curve(ns, curve: Curve, guarantee: dict | None = None) -> None:
    if ns.out:
        dump_curve(curve, ns.out, guarantee)
    else:
        _emit(ns, {"curve": curve_to_dict(curve), "guarantee": guarantee})


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def _gen(ns) -> int:
    p = _params(ns)
    if ns.k is not None:
        p.setdefault("k", ns.k)
    k = int(p.get("k", cons.DEFAULT_ORDER))
    name = ns.builder
    guarantee: dict | None = None

    if name == "constant":
        value = _parse_point(ns.value) if ns.value else tuple(p["value"])
        curve = Constant(value)
    elif name == "polygonal":
        curve = polygonal([(t, tuple(pt)) for t, pt in p["vertices"]])
    elif name == "hilbert":
        target = _parse_rect(ns.target) if ns.target else \
            rect_from_list(p.get("target", [0, 1, 0, 1]))
        curve = hilbert(k, target, int(p.get("orientation", 0)))
        guarantee = {"delta": target.max_side * 2.0 ** (-k)}
    elif name == "filler":
        target = _parse_rect(ns.target) if ns.target else \
            rect_from_list(p.get("target", [0, 1, 0, 1]))
        curve = filler_with_endpoints(target, tuple(p["u"]), tuple(p["v"]), k)
        guarantee = {"delta": target.max_side * 2.0 ** (-k)}
    elif name == "semigroup":
        bp = _breakpoints(p)
        curve = cons.semigroup_generator(int(p["n"]), bp, k)
        guarantee = {"delta": 2.0 ** (-k), "breakpoints": list(bp.values)}
    elif name == "semigroup-word":
        bp = _breakpoints(p)
        word = [(int(i), int(m)) for i, m in p["word"]]
        curve = cons.semigroup_product(word, bp, k)
        guarantee = {"delta": 2.0 ** (-k), "breakpoints": list(bp.values)}
    elif name == "spaceable":
        bp = _breakpoints(p)
        curve = cons.spaceable_basis(int(p["n"]), bp, k)
        guarantee = {"delta": 2.0 ** (1 - k), "breakpoints": list(bp.values)}
    elif name == "spaceable-combination":
        bp = _breakpoints(p)
        curve, predicted = cons.spaceable_combination(p["coefs"], bp, k)
        guarantee = {"delta": 2.0 ** (1 - k) * max(abs(float(c)) for c in p["coefs"]),
                     "predicted_image": list(predicted.as_tuple()),
                     "breakpoints": list(bp.values)}
    elif name == "tsf1":
        bp = _breakpoints(p)
        trunc = int(p["K"])
        curve = cons.tsf1_generator(int(p["n"]), trunc, bp, k)
        guarantee = {"delta": 2.0 ** (-k) / trunc, "truncation": trunc,
                     "breakpoints": list(bp.values)}
    elif name == "cumulative":
        bp = _breakpoints(p)
        curve = cons.cumulative_generator(int(p["n"]), bp, k)
        guarantee = {"delta": 2.0 ** (-k), "breakpoints": list(bp.values)}
    elif name == "algebrable":
        bp = _breakpoints(p)
        trunc = int(p["K"])
        curve = cons.algebrable_generator(int(p["n"]), trunc, bp, k)
        guarantee = {"truncation": trunc, "breakpoints": list(bp.values)}
    elif name == "nonequicontinuity":
        target = rect_from_list(p.get("target", [0, 1, 0, 1]))
        curve, u, v = cons.nonequicontinuity_witness(float(p["delta"]), target, k)
        guarantee = {"u": u, "v": v, "delta": float(p["delta"])}
    else:
        raise _UsageError(f"unknown builder {name!r}")
    _write_curve(ns, curve, guarantee)
    return EXIT_OK


# ---------------------------------------------------------------------------
# combine
# ---------------------------------------------------------------------------

def _combine(ns) -> int:
    curves = [load_curve_record(path)[0] for path in ns.inputs]
    op = ns.op
    guarantee: dict | None = None
    if op == "identity":
        (curve,) = curves
    elif op == "sum":
        curve = add(*curves)
    elif op == "product":
        curve = multiply(*curves)
    elif op == "scale":
        (inner,) = curves
        curve = ScalarMultiple(ns.c, inner)
    elif op == "affine":
        (inner,) = curves
        curve = AffineImage(inner, _parse_point(ns.scale), _parse_point(ns.shift))
    elif op == "restrict":
        (inner,) = curves
        curve = Restrict(inner, ns.lo, ns.hi)
    elif op == "concat":
        breaks = [float(b) for b in ns.breaks.split(",")] if ns.breaks else []
        if len(breaks) != len(curves) - 1:
            raise StructureError("need one break per junction")
        bounds = [0.0] + breaks + [1.0]
        curve = concat([((bounds[i], bounds[i + 1]), c)
                        for i, c in enumerate(curves)])
    elif op == "poly":
        poly = parse_polynomial(ns.p, arity=len(curves))
        curve = poly_apply(poly, curves)
    elif op == "approx":
        (inner,) = curves
        curve = polygonal_approximation(inner, ns.pieces)
        guarantee = {"rho_bound": 2.0 * inner.lipschitz_bound / ns.pieces}
    elif op == "sf-approx":
        (inner,) = curves
        curve = cons.sf_dense_approximation(inner, ns.eps, ns.k)
        guarantee = {"eps": ns.eps}
    elif op == "locally-constant":
        (inner,) = curves
        curve = cons.locally_constant_perturbation(inner, ns.t0, ns.eps)
        plateau = cons.constant_plateau(curve)
        guarantee = {"eps": ns.eps,
                     "constant_on": list(plateau) if plateau else None}
    elif op == "porosity":
        (inner,) = curves
        witness = cons.porosity_witness(inner, ns.eps, ns.alpha)
        _write_curve(ns, witness.center,
                     {"radius": witness.radius, "bound": witness.bound,
                      "eps": witness.eps, "alpha": witness.alpha})
        return EXIT_OK
    else:
        raise _UsageError(f"unknown combine op {op!r}")
    _write_curve(ns, curve, guarantee)
    return EXIT_OK


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _verify(ns) -> int:
    curve, _ = load_curve_record(ns.input)
    target = _parse_rect(ns.target) if ns.target else UNIT_SQUARE
    ok = ver.certify_delta_dense(curve, target, ns.delta, ns.samples)
    _emit(ns, {"certified": bool(ok), "delta": ns.delta,
               "target": list(target.as_tuple())})
    return EXIT_OK if ok else EXIT_VERIFICATION


def _content(ns) -> int:
    curve, _ = load_curve_record(ns.input)
    frame = _parse_rect(ns.frame) if ns.frame else ver.image_bounds(curve)
    grid = ver.rasterize(curve, frame, ns.grid, ns.samples)
    report = ver.content_bounds(grid)
    if ns.pgm:
        ver.write_pgm(grid, ns.pgm)
    payload = report.to_dict()
    payload["out_of_frame"] = grid.out_of_frame
    _emit(ns, payload)
    return EXIT_OK


def _classify(ns) -> int:
    curve, _ = load_curve_record(ns.input)
    grids = [int(g) for g in ns.grids.split(",")]
    frame = _parse_rect(ns.frame) if ns.frame else None
    report = ver.classify(curve, grids, frame=frame, tau_sf=ns.tau_sf,
                          n_samples=ns.samples)
    _emit(ns, report.to_dict())
    return EXIT_OK if report.verdict == ver.SF_CERTIFIED else EXIT_VERIFICATION


def _nikolskii(ns) -> int:
    basis = [load_curve_record(path)[0] for path in ns.inputs]
    ratio = ver.nikolskii_ratio(basis, ns.trials, ns.max_len, ns.seed)
    ok = ratio <= 1.0 + ver.TAU_NORM
    _emit(ns, {"ratio": ratio, "trials": ns.trials, "basic": bool(ok)})
    return EXIT_OK if ok else EXIT_VERIFICATION


def _render(ns) -> int:
    curve, _ = load_curve_record(ns.input)
    render_svg(curve, ns.out, n_samples=ns.samples, size=ns.size,
               stroke=ns.stroke)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="curvefill",
                     description="build, combine and verify plane-filling curves")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="build a named construction")
    g.add_argument("builder")
    g.add_argument("--params", help="JSON parameter block")
    g.add_argument("--k", type=int, help="filler order")
    g.add_argument("--value", help="x,y for constant")
    g.add_argument("--target", help="x_lo,x_hi,y_lo,y_hi")
    g.add_argument("-o", "--out")
    g.set_defaults(func=_gen)

    c = sub.add_parser("combine", help="apply a combinator to curve files")
    c.add_argument("op")
    c.add_argument("inputs", nargs="+")
    c.add_argument("--c", type=float, default=1.0, help="scalar factor")
    c.add_argument("--p", help="polynomial expression in x,y,z")
    c.add_argument("--scale", default="1,1")
    c.add_argument("--shift", default="0,0")
    c.add_argument("--breaks", help="comma list of interior breakpoints")
    c.add_argument("--lo", type=float, default=0.0)
    c.add_argument("--hi", type=float, default=1.0)
    c.add_argument("--t0", type=float, default=1.0)
    c.add_argument("--eps", type=float, default=0.1)
    c.add_argument("--alpha", type=float, default=0.5)
    c.add_argument("--pieces", type=int, default=1024)
    c.add_argument("--k", type=int, default=cons.DEFAULT_ORDER)
    c.add_argument("-o", "--out")
    c.set_defaults(func=_combine)

    v = sub.add_parser("verify", help="certify delta-density over a target")
    v.add_argument("input")
    v.add_argument("--delta", type=float, required=True)
    v.add_argument("--target")
    v.add_argument("--samples", type=int)
    v.add_argument("-o", "--out")
    v.set_defaults(func=_verify)

    ct = sub.add_parser("content", help="inner/outer content bounds")
    ct.add_argument("input")
    ct.add_argument("--grid", type=int, default=256)
    ct.add_argument("--frame")
    ct.add_argument("--samples", type=int)
    ct.add_argument("--pgm", help="dump coverage as PGM")
    ct.add_argument("-o", "--out")
    ct.set_defaults(func=_content)

    cl = sub.add_parser("classify", help="SF / TSF / thin verdict")
    cl.add_argument("input")
    cl.add_argument("--grids", default="64,256,512")
    cl.add_argument("--frame")
    cl.add_argument("--tau-sf", type=float, default=ver.TAU_SF, dest="tau_sf")
    cl.add_argument("--samples", type=int)
    cl.add_argument("-o", "--out")
    cl.set_defaults(func=_classify)

    nk = sub.add_parser("nikolskii", help="basic-sequence ratio of a family")
    nk.add_argument("inputs", nargs="+")
    nk.add_argument("--trials", type=int, default=1000)
    nk.add_argument("--max-len", type=int, default=8, dest="max_len")
    nk.add_argument("--seed", type=int, default=0)
    nk.add_argument("-o", "--out")
    nk.set_defaults(func=_nikolskii)

    r = sub.add_parser("render", help="render the trace as SVG")
    r.add_argument("input")
    r.add_argument("--samples", type=int, default=10_000)
    r.add_argument("--size", type=int, default=800)
    r.add_argument("--stroke", type=float)
    r.add_argument("-o", "--out", required=True)
    r.set_defaults(func=_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        return ns.func(ns)
    except _UsageError as exc:
        sys.stdout.write(json.dumps({"error": {"code": "usage",
                                               "message": str(exc)}}) + "\n")
        return EXIT_USAGE
    except (CurveError, json.JSONDecodeError, KeyError, ValueError,
            OSError) as exc:
        sys.stdout.write(json.dumps({"error": {"code": "malformed-input",
                                               "message": str(exc)}}) + "\n")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
