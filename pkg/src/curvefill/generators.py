"""Primitive filling curves: Hilbert approximants, prescribed-endpoint
rectangle fillers, polygonal chains and polygonal approximations.

Surjectivity onto a rectangle is replaced throughout by a finite
guarantee: every point of the target lies within delta of the trace,
delta = max_side * 2^-k for an order-k approximant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel import (Concat, Curve, HilbertApprox, Polygonal, PreconditionError,
                     Rect, StructureError, uniform_distance)


@dataclass(frozen=True)
class FillerGuarantee:
    """Resolution certificate: every target point is within delta (d_inf)
    of the curve's image."""

    delta: float


def hilbert(k: int, target: Rect = Rect(0.0, 1.0, 0.0, 1.0),
            orientation: int = 0) -> Curve:
    """Order-k Hilbert polyline filling the target rectangle.

    The curve passes through the centers of the 4^k cells of the
    2^k x 2^k grid in Hilbert order, starting next to (x_lo, y_lo).
    """
    return HilbertApprox(k, target, orientation)


def hilbert_guarantee(k: int, target: Rect) -> FillerGuarantee:
    return FillerGuarantee(delta=target.max_side * 2.0 ** (-k))


def filler_with_endpoints(target: Rect, u, v, k: int = 6) -> Curve:
    """Curve filling the target at resolution 2^-k with exact endpoints u, v.

    Three-piece gluing: a straight run-in from u to the filler start on
    [0, 1/3], the Hilbert filler on [1/3, 2/3], a straight run-out to v.
    Straight arcs suffice because rectangles are convex.
    """
    if target.is_degenerate():
        raise PreconditionError("filler target rectangle is degenerate")
    u = (float(u[0]), float(u[1]))
    v = (float(v[0]), float(v[1]))
    if not target.contains(u):
        raise PreconditionError(f"endpoint {u} outside target {target}")
    if not target.contains(v):
        raise PreconditionError(f"endpoint {v} outside target {target}")
    core = HilbertApprox(k, target)
    start = core.at(0.0)
    end = core.at(1.0)
    third = 1.0 / 3.0
    return Concat((
        (0.0, third, Polygonal((0.0, 1.0), (u, start))),
        (third, 2 * third, core),
        (2 * third, 1.0, Polygonal((0.0, 1.0), (end, v))),
    ))


def polygonal(vertices) -> Curve:
    """Piecewise-affine curve through (t_i, point_i) breakpoints."""
    ts = tuple(float(t) for t, _ in vertices)
    pts = tuple(p for _, p in vertices)
    return Polygonal(ts, pts)


def segment(p, q) -> Curve:
    return Polygonal((0.0, 1.0), (p, q))


def polygonal_approximation(f: Curve, n_pieces: int) -> Curve:
    """Polygonal interpolant of f at the uniform nodes i/N.

    rho(approximation, f) <= 2 L_f / N from the tracked Lipschitz bound.
    """
    if n_pieces < 1:
        raise PreconditionError("need at least one piece")
    ts = np.linspace(0.0, 1.0, n_pieces + 1)
    pts = f.values(ts)
    return Polygonal(tuple(ts), tuple(map(tuple, pts)))


def approximation_error_bound(f: Curve, n_pieces: int) -> float:
    return 2.0 * f.lipschitz_bound / n_pieces


def certified_distance_below(f: Curve, g: Curve, bound: float,
                             margin: float = 0.1) -> bool:
    """True when rho(f,g) < bound is certified by sampling plus the
    Lipschitz slack; sample count is chosen from the tracked bounds."""
    if bound <= 0:
        raise PreconditionError("bound must be positive")
    lips = f.lipschitz_bound + g.lipschitz_bound
    n = int(np.ceil(lips / (margin * bound))) + 2
    n = min(max(n, 64), 4_000_000)
    return uniform_distance(f, g, n).certified_upper < bound
