"""Curve combinator trees over [0,1] -> R^2 and the uniform metric.

A Curve is an immutable expression tree.  Leaves are constants, polygonal
chains and Hilbert approximants; inner nodes reparametrize (Concat,
Restrict), transform values (AffineImage, ScalarMultiple) or combine
curves (Sum, PointwiseProduct, PolyApply).  Every node carries two
conservative certificates, a Lipschitz bound (plane d_inf distance per
unit parameter) and a sup bound (max absolute coordinate), which back the
certified uniform-distance estimates and the sampling planner.

Plane distance is d_inf((a,b),(c,d)) = max(|a-c|, |b-d|) throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce
from typing import NamedTuple, Sequence

import numpy as np

TAU_GLUE = 1e-12
MAX_PLAN_POINTS = 40_000_000


class CurveError(Exception):
    pass


class DomainError(CurveError):
    """Parameter outside [0,1]."""


class StructureError(CurveError):
    """Malformed tree: bad partition, arity mismatch, degenerate input."""


class ContinuityError(StructureError):
    """Adjacent pieces disagree at a breakpoint beyond the glue tolerance."""


class PreconditionError(CurveError):
    """A builder precondition does not hold."""


def d_inf(p, q) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi]."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self):
        if not (self.x_lo <= self.x_hi and self.y_lo <= self.y_hi):
            raise StructureError(f"rectangle sides must be ordered: {self}")

    @property
    def width(self) -> float:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> float:
        return self.y_hi - self.y_lo

    @property
    def max_side(self) -> float:
        return max(self.width, self.height)

    @property
    def area(self) -> float:
        return self.width * self.height

    def is_degenerate(self) -> bool:
        return self.x_lo == self.x_hi or self.y_lo == self.y_hi

    def contains(self, p) -> bool:
        return (self.x_lo <= p[0] <= self.x_hi) and (self.y_lo <= p[1] <= self.y_hi)

    def as_tuple(self):
        return (self.x_lo, self.x_hi, self.y_lo, self.y_hi)


UNIT_SQUARE = Rect(0.0, 1.0, 0.0, 1.0)
SYM_SQUARE = Rect(-1.0, 1.0, -1.0, 1.0)


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial in N variables as a list of (coefficient, exponents).

    When allow_constant_term is False the all-zero exponent vector is
    rejected; free-algebra checks need polynomials without constant term.
    """

    terms: tuple
    arity: int
    allow_constant_term: bool = True

    def __post_init__(self):
        terms = tuple((float(c), tuple(int(e) for e in es)) for c, es in self.terms)
        object.__setattr__(self, "terms", terms)
        for c, es in terms:
            if len(es) != self.arity:
                raise StructureError(
                    f"exponent vector {es} does not match arity {self.arity}")
            if any(e < 0 for e in es):
                raise StructureError("negative exponents are not allowed")
            if not self.allow_constant_term and all(e == 0 for e in es):
                raise StructureError("constant term present but not allowed")

    def is_zero(self) -> bool:
        return all(c == 0.0 for c, _ in self.terms)

    def evaluate(self, args: np.ndarray) -> np.ndarray:
        """Apply to an (arity, m) array of scalar samples, one row per variable."""
        out = np.zeros(args.shape[1])
        for c, es in self.terms:
            acc = np.full(args.shape[1], c)
            for i, e in enumerate(es):
                if e:
                    acc = acc * args[i] ** e
            out = out + acc
        return out

    def evaluate_points(self, points: Sequence) -> tuple:
        """Coordinatewise application to N plane points."""
        pts = np.asarray(points, dtype=float)
        if pts.shape != (self.arity, 2):
            raise StructureError(f"expected {self.arity} points, got {pts.shape}")
        x = self.evaluate(pts[:, 0:1])[0]
        y = self.evaluate(pts[:, 1:2])[0]
        return (x, y)

    def sensitivity(self, boxes):
        """Per-variable derivative bounds over |x_i| <= boxes[i]."""
        boxes = [float(b) for b in boxes]
        sens = []
        for i in range(self.arity):
            s = 0.0
            for c, es in self.terms:
                if es[i] == 0:
                    continue
                contrib = abs(c) * es[i] * boxes[i] ** (es[i] - 1)
                for j, e in enumerate(es):
                    if j != i and e:
                        contrib *= boxes[j] ** e
                s += contrib
            sens.append(s)
        return sens

    def magnitude(self, boxes) -> float:
        """Upper bound of |P| over the box |x_i| <= boxes[i]."""
        out = 0.0
        for c, es in self.terms:
            v = abs(c)
            for b, e in zip(boxes, es):
                if e:
                    v *= float(b) ** e
            out += v
        return out


def monomial(arity: int, index: int, coefficient: float = 1.0) -> Polynomial:
    es = [0] * arity
    es[index] = 1
    return Polynomial(terms=((coefficient, tuple(es)),), arity=arity)


# ---------------------------------------------------------------------------
# Hilbert cell order
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _unit_hilbert_vertices(k: int, orientation: int) -> np.ndarray:
    """Centers of the 4^k cells of the unit square in Hilbert traversal order."""
    n = 1 << k
    t = np.arange(n * n, dtype=np.int64)
    x = np.zeros(n * n, dtype=np.int64)
    y = np.zeros(n * n, dtype=np.int64)
    s = 1
    while s < n:
        rx = (t >> 1) & 1
        ry = (t ^ rx) & 1
        flip = (ry == 0) & (rx == 1)
        x[flip] = (s - 1) - x[flip]
        y[flip] = (s - 1) - y[flip]
        swap = ry == 0
        x[swap], y[swap] = y[swap], x[swap].copy()
        x += s * rx
        y += s * ry
        t >>= 2
        s <<= 1
    ux = (x + 0.5) / n
    uy = (y + 0.5) / n
    for _ in range(orientation % 4):
        ux, uy = uy, 1.0 - ux
    return np.column_stack([ux, uy])


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------

class Curve:
    """Base class; subclasses implement _values/_plan_params/_gap_info."""

    def values(self, ts) -> np.ndarray:
        """Vectorized evaluation; ts must lie in [0,1]."""
        ts = np.asarray(ts, dtype=float)
        if ts.size and (ts.min() < 0.0 or ts.max() > 1.0):
            raise DomainError("parameters outside [0,1]")
        return self._values(ts)

    def at(self, t: float):
        if not 0.0 <= t <= 1.0:
            raise DomainError(f"parameter {t} outside [0,1]")
        v = self._values(np.array([float(t)]))
        return (float(v[0, 0]), float(v[0, 1]))

    def __call__(self, t: float):
        return self.at(t)

    def _values(self, ts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _plan_params(self, eps: float) -> np.ndarray:
        raise NotImplementedError

    def _gap_info(self, ts: np.ndarray):
        raise NotImplementedError

    @property
    def lipschitz_bound(self) -> float:
        raise NotImplementedError

    @property
    def sup_bound(self) -> float:
        raise NotImplementedError


def _as_point(p):
    x, y = p
    return (float(x), float(y))


_ENDPOINTS = None


def _endpoints():
    global _ENDPOINTS
    if _ENDPOINTS is None:
        _ENDPOINTS = np.array([0.0, 1.0])
    return _ENDPOINTS.copy()


@dataclass(frozen=True)
class Constant(Curve):
    point: tuple

    def __post_init__(self):
        object.__setattr__(self, "point", _as_point(self.point))

    def _values(self, ts):
        out = np.empty((ts.size, 2))
        out[:, 0] = self.point[0]
        out[:, 1] = self.point[1]
        return out

    def _plan_params(self, eps):
        return _endpoints()

    def _gap_info(self, ts):
        m = ts.size - 1
        return np.zeros(m), np.full(m, max(abs(self.point[0]), abs(self.point[1])))

    @property
    def lipschitz_bound(self):
        return 0.0

    @property
    def sup_bound(self):
        return max(abs(self.point[0]), abs(self.point[1]))


@dataclass(frozen=True)
class Polygonal(Curve):
    """Piecewise-affine interpolant of (t_i, point_i) with t_0=0, t_last=1."""

    ts: tuple
    points: tuple

    def __post_init__(self):
        ts = tuple(float(t) for t in self.ts)
        pts = tuple(_as_point(p) for p in self.points)
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "points", pts)
        if len(ts) != len(pts) or len(ts) < 2:
            raise StructureError("need matching parameter and vertex lists, length >= 2")
        if ts[0] != 0.0 or ts[-1] != 1.0:
            raise StructureError("polygonal parameters must start at 0 and end at 1")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise StructureError("polygonal parameters must be strictly increasing")

    @cached_property
    def _t_arr(self):
        return np.array(self.ts)

    @cached_property
    def _p_arr(self):
        return np.array(self.points)

    def _values(self, ts):
        tv, pv = self._t_arr, self._p_arr
        i = np.clip(np.searchsorted(tv, ts, side="right") - 1, 0, tv.size - 2)
        s = (ts - tv[i]) / (tv[i + 1] - tv[i])
        s = s[:, None]
        return (1.0 - s) * pv[i] + s * pv[i + 1]

    def _plan_params(self, eps):
        return self._t_arr.copy()

    def _gap_info(self, ts):
        v = self._values(ts)
        bounds = np.max(np.abs(np.diff(v, axis=0)), axis=1)
        a = np.max(np.abs(v), axis=1)
        boxes = np.maximum(a[:-1], a[1:])
        return bounds, boxes

    @cached_property
    def lipschitz_bound(self):
        tv, pv = self._t_arr, self._p_arr
        steps = np.max(np.abs(np.diff(pv, axis=0)), axis=1)
        return float(np.max(steps / np.diff(tv)))

    @cached_property
    def sup_bound(self):
        return float(np.max(np.abs(self._p_arr)))


@dataclass(frozen=True)
class HilbertApprox(Curve):
    """Order-k Hilbert polyline through the 4^k cell centers of a rectangle.

    Every point of the target is within max_side * 2^-k of the trace, and
    the trace starts in the cell touching (x_lo, y_lo) for orientation 0.
    """

    order: int
    target: Rect
    orientation: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise StructureError("hilbert order must be >= 1")
        if self.order > 12:
            raise StructureError("hilbert order above 12 is not supported")
        if self.target.is_degenerate():
            raise StructureError("hilbert target rectangle is degenerate")

    @property
    def resolution(self) -> float:
        return self.target.max_side * 2.0 ** (-self.order)

    @cached_property
    def _unit(self):
        return _unit_hilbert_vertices(self.order, self.orientation)

    def _map(self, unit):
        r = self.target
        out = np.empty_like(unit)
        out[:, 0] = r.x_lo + unit[:, 0] * r.width
        out[:, 1] = r.y_lo + unit[:, 1] * r.height
        return out

    def _values(self, ts):
        unit = self._unit
        m = unit.shape[0]
        u = ts * (m - 1)
        i = np.clip(np.floor(u).astype(np.int64), 0, m - 2)
        s = (u - i)[:, None]
        return self._map((1.0 - s) * unit[i] + s * unit[i + 1])

    @cached_property
    def _slope(self):
        m = 4 ** self.order
        return (m - 1) * self.target.max_side * 2.0 ** (-self.order)

    def _plan_params(self, eps):
        segs = 4 ** self.order - 1
        want = max(1, min(segs, int(math.ceil(self.lipschitz_bound / eps))))
        return np.linspace(0.0, 1.0, want + 1)

    def _gap_info(self, ts):
        bounds = self._slope * np.diff(ts)
        boxes = np.full(ts.size - 1, self.sup_bound)
        return bounds, boxes

    @cached_property
    def lipschitz_bound(self):
        return 2.0 * 2.0 ** self.order * self.target.max_side

    @cached_property
    def sup_bound(self):
        r = self.target
        return max(abs(r.x_lo), abs(r.x_hi), abs(r.y_lo), abs(r.y_hi))


@dataclass(frozen=True)
class Concat(Curve):
    """Pieces glued over a partition of [0,1]; each piece is pulled back
    affinely from its subinterval.  Interior breakpoints evaluate to the
    left piece."""

    pieces: tuple  # of (lo, hi, Curve)

    def __post_init__(self):
        norm = tuple((float(lo), float(hi), c) for lo, hi, c in self.pieces)
        object.__setattr__(self, "pieces", norm)
        if not norm:
            raise StructureError("concat needs at least one piece")
        if norm[0][0] != 0.0 or norm[-1][1] != 1.0:
            raise StructureError("concat pieces must cover [0,1]")
        for (lo, hi, _), (lo2, _, _) in zip(norm, norm[1:]):
            if hi != lo2:
                raise StructureError(f"gap or overlap at {hi} vs {lo2}")
        if any(lo >= hi for lo, hi, _ in norm):
            raise StructureError("empty concat piece")

    @cached_property
    def _interior(self):
        return np.array([lo for lo, _, _ in self.pieces[1:]])

    def _values(self, ts):
        idx = np.searchsorted(self._interior, ts, side="left")
        out = np.empty((ts.size, 2))
        for i, (lo, hi, c) in enumerate(self.pieces):
            m = idx == i
            if not m.any():
                continue
            out[m] = c._values((ts[m] - lo) / (hi - lo))
        return out

    def _plan_params(self, eps):
        parts = []
        for lo, hi, c in self.pieces:
            parts.append(lo + c._plan_params(eps) * (hi - lo))
        return np.concatenate(parts)

    def _gap_info(self, ts):
        # ts contains every piece boundary, so gaps never straddle pieces
        bounds = np.empty(ts.size - 1)
        boxes = np.empty(ts.size - 1)
        for lo, hi, c in self.pieces:
            i0 = np.searchsorted(ts, lo, side="left")
            i1 = np.searchsorted(ts, hi, side="left")
            if i1 <= i0:
                continue
            sub = (ts[i0:i1 + 1] - lo) / (hi - lo)
            b, bx = c._gap_info(sub)
            bounds[i0:i1] = b
            boxes[i0:i1] = bx
        return bounds, boxes

    @cached_property
    def lipschitz_bound(self):
        return max(c.lipschitz_bound / (hi - lo) for lo, hi, c in self.pieces)

    @cached_property
    def sup_bound(self):
        return max(c.sup_bound for _, _, c in self.pieces)


@dataclass(frozen=True)
class Restrict(Curve):
    """The curve f(lo + t*(hi - lo)): f restricted to [lo, hi], rescaled."""

    curve: Curve
    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not (0.0 <= self.lo < self.hi <= 1.0):
            raise StructureError("restriction window must be nondegenerate in [0,1]")

    def _inner(self, ts):
        span = self.hi - self.lo
        s = self.lo + ts * span
        # keep the window ends exact under rounding
        s[ts == 1.0] = self.hi
        return np.clip(s, self.lo, self.hi)

    def _values(self, ts):
        return self.curve._values(self._inner(ts))

    def _plan_params(self, eps):
        p = self.curve._plan_params(eps)
        inside = p[(p > self.lo) & (p < self.hi)]
        mapped = (inside - self.lo) / (self.hi - self.lo)
        return np.concatenate([[0.0], mapped, [1.0]])

    def _gap_info(self, ts):
        return self.curve._gap_info(self._inner(ts))

    @property
    def lipschitz_bound(self):
        return self.curve.lipschitz_bound * (self.hi - self.lo)

    @property
    def sup_bound(self):
        return self.curve.sup_bound


@dataclass(frozen=True)
class AffineImage(Curve):
    """Componentwise s*f(t) + shift."""

    curve: Curve
    scale: tuple
    shift: tuple

    def __post_init__(self):
        object.__setattr__(self, "scale", _as_point(self.scale))
        object.__setattr__(self, "shift", _as_point(self.shift))

    def _values(self, ts):
        v = self.curve._values(ts)
        return v * np.array(self.scale) + np.array(self.shift)

    @property
    def _smax(self):
        return max(abs(self.scale[0]), abs(self.scale[1]))

    def _plan_params(self, eps):
        s = self._smax
        return self.curve._plan_params(eps / s if s > 0 else 1.0)

    def _gap_info(self, ts):
        b, bx = self.curve._gap_info(ts)
        tmax = max(abs(self.shift[0]), abs(self.shift[1]))
        return b * self._smax, bx * self._smax + tmax

    @property
    def lipschitz_bound(self):
        return self.curve.lipschitz_bound * self._smax

    @property
    def sup_bound(self):
        tmax = max(abs(self.shift[0]), abs(self.shift[1]))
        return self.curve.sup_bound * self._smax + tmax


@dataclass(frozen=True)
class ScalarMultiple(Curve):
    factor: float
    curve: Curve

    def __post_init__(self):
        object.__setattr__(self, "factor", float(self.factor))

    def _values(self, ts):
        return self.factor * self.curve._values(ts)

    def _plan_params(self, eps):
        c = abs(self.factor)
        return self.curve._plan_params(eps / c if c > 0 else 1.0)

    def _gap_info(self, ts):
        b, bx = self.curve._gap_info(ts)
        c = abs(self.factor)
        return b * c, bx * c

    @property
    def lipschitz_bound(self):
        return abs(self.factor) * self.curve.lipschitz_bound

    @property
    def sup_bound(self):
        return abs(self.factor) * self.curve.sup_bound


@dataclass(frozen=True)
class Sum(Curve):
    left: Curve
    right: Curve

    def _values(self, ts):
        return self.left._values(ts) + self.right._values(ts)

    def _plan_params(self, eps):
        return np.concatenate([self.left._plan_params(eps),
                               self.right._plan_params(eps)])

    def _gap_info(self, ts):
        ba, xa = self.left._gap_info(ts)
        bb, xb = self.right._gap_info(ts)
        return ba + bb, xa + xb

    @property
    def lipschitz_bound(self):
        return self.left.lipschitz_bound + self.right.lipschitz_bound

    @property
    def sup_bound(self):
        return self.left.sup_bound + self.right.sup_bound


@dataclass(frozen=True)
class PointwiseProduct(Curve):
    left: Curve
    right: Curve

    def _values(self, ts):
        return self.left._values(ts) * self.right._values(ts)

    def _plan_params(self, eps):
        return np.concatenate([self.left._plan_params(eps),
                               self.right._plan_params(eps)])

    def _gap_info(self, ts):
        ba, xa = self.left._gap_info(ts)
        bb, xb = self.right._gap_info(ts)
        return xa * bb + xb * ba, xa * xb

    @property
    def lipschitz_bound(self):
        return (self.left.sup_bound * self.right.lipschitz_bound
                + self.right.sup_bound * self.left.lipschitz_bound)

    @property
    def sup_bound(self):
        return self.left.sup_bound * self.right.sup_bound


@dataclass(frozen=True)
class PolyApply(Curve):
    """Coordinatewise polynomial of N curves:
    P((x1,y1),..,(xN,yN)) = (P(x1..xN), P(y1..yN))."""

    poly: Polynomial
    curves: tuple

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        if len(self.curves) != self.poly.arity:
            raise StructureError(
                f"polynomial arity {self.poly.arity} vs {len(self.curves)} curves")

    def _values(self, ts):
        vals = [c._values(ts) for c in self.curves]
        x = np.stack([v[:, 0] for v in vals])
        y = np.stack([v[:, 1] for v in vals])
        return np.column_stack([self.poly.evaluate(x), self.poly.evaluate(y)])

    def _plan_params(self, eps):
        return np.concatenate([c._plan_params(eps) for c in self.curves])

    def _gap_info(self, ts):
        infos = [c._gap_info(ts) for c in self.curves]
        m = ts.size - 1
        bound = np.zeros(m)
        box = np.zeros(m)
        n = len(self.curves)
        for c, es in self.poly.terms:
            prod = np.full(m, abs(c))
            for j, e in enumerate(es):
                if e:
                    prod = prod * infos[j][1] ** e
            box += prod
            for i in range(n):
                if es[i] == 0:
                    continue
                sens = np.full(m, abs(c) * es[i])
                sens = sens * infos[i][1] ** (es[i] - 1)
                for j, e in enumerate(es):
                    if j != i and e:
                        sens = sens * infos[j][1] ** e
                bound += sens * infos[i][0]
        return bound, box

    @cached_property
    def lipschitz_bound(self):
        boxes = [c.sup_bound for c in self.curves]
        sens = self.poly.sensitivity(boxes)
        return sum(s * c.lipschitz_bound for s, c in zip(sens, self.curves))

    @cached_property
    def sup_bound(self):
        return self.poly.magnitude([c.sup_bound for c in self.curves])


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def concat(pieces, tau_glue: float = TAU_GLUE) -> Curve:
    """Glue curves over a partition of [0,1] given as ((lo,hi), curve) pairs.

    Raises StructureError when the intervals are not an exact partition and
    ContinuityError when adjacent endpoint values differ by more than
    tau_glue in d_inf.
    """
    norm = []
    for (lo, hi), c in pieces:
        norm.append((float(lo), float(hi), c))
    if not norm:
        raise StructureError("concat needs at least one piece")
    if norm[0][0] != 0.0 or norm[-1][1] != 1.0 or \
            any(a[1] != b[0] for a, b in zip(norm, norm[1:])):
        raise StructureError("intervals do not partition [0,1]")
    for (lo, hi, left), (_, _, right) in zip(norm, norm[1:]):
        gap = d_inf(left.at(1.0), right.at(0.0))
        if gap > tau_glue:
            raise ContinuityError(
                f"pieces disagree by {gap:.3e} at t={hi} (tolerance {tau_glue:.0e})")
    return Concat(tuple(norm))


def poly_apply(poly: Polynomial, curves: Sequence[Curve]) -> Curve:
    """Apply a polynomial coordinatewise to a list of curves."""
    curves = tuple(curves)
    if len(curves) != poly.arity:
        raise StructureError(
            f"polynomial arity {poly.arity} does not match {len(curves)} curves")
    return PolyApply(poly, curves)


def scale(factor: float, curve: Curve) -> Curve:
    return ScalarMultiple(factor, curve)


def add(*curves: Curve) -> Curve:
    if not curves:
        raise StructureError("empty sum")
    return reduce(Sum, curves)


def multiply(*curves: Curve) -> Curve:
    if not curves:
        raise StructureError("empty product")
    return reduce(PointwiseProduct, curves)


def power(curve: Curve, m: int) -> Curve:
    if m < 1:
        raise StructureError("power must be >= 1")
    return reduce(PointwiseProduct, [curve] * m)


def restrict(curve: Curve, lo: float, hi: float) -> Curve:
    return Restrict(curve, lo, hi)


class UniformDistance(NamedTuple):
    estimate: float
    certified_upper: float


def uniform_distance(f: Curve, g: Curve, n_samples: int) -> UniformDistance:
    """Sampled sup of d_inf(f(t), g(t)) over an equispaced grid.

    The estimate is a lower bound of the true uniform distance; the
    certified upper bound adds (L_f + L_g) / (2 (n-1)) from the tracked
    Lipschitz bounds, so estimate <= rho(f,g) <= certified_upper.
    """
    if n_samples < 2:
        raise PreconditionError("need at least 2 samples")
    ts = np.linspace(0.0, 1.0, n_samples)
    dv = np.abs(f.values(ts) - g.values(ts))
    est = float(np.max(dv))
    slack = (f.lipschitz_bound + g.lipschitz_bound) / (2.0 * (n_samples - 1))
    return UniformDistance(est, est + slack)


def sup_norm(f: Curve, n_samples: int = 4096) -> float:
    """Sampled sup over t of max(|x(t)|, |y(t)|)."""
    ts = np.linspace(0.0, 1.0, n_samples)
    return float(np.max(np.abs(f.values(ts))))


# ---------------------------------------------------------------------------
# Sampling plans
# ---------------------------------------------------------------------------

def _refine(ts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    total = int(counts.sum())
    if total + 1 > MAX_PLAN_POINTS:
        raise StructureError(f"sampling plan would need {total} points")
    starts = np.repeat(ts[:-1], counts)
    widths = np.repeat(np.diff(ts), counts)
    denoms = np.repeat(counts, counts)
    offs = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    out = np.empty(total + 1)
    out[:-1] = starts + widths * (offs / denoms)
    out[-1] = ts[-1]
    return out


def sample_plan(curve: Curve, eps: float, window=None) -> np.ndarray:
    """Parameters t such that the curve moves at most eps (d_inf) between
    consecutive entries.

    Structural breakpoints seed the plan; each gap is then subdivided
    according to a per-gap movement bound, so activity confined to tiny
    parameter windows is still resolved.
    """
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    base = np.unique(curve._plan_params(eps))
    if window is not None:
        lo, hi = float(window[0]), float(window[1])
        inside = base[(base > lo) & (base < hi)]
        base = np.concatenate([[lo], inside, [hi]])
    if base.size < 2:
        base = np.array([0.0, 1.0]) if window is None else np.array([lo, hi])
    bounds, _ = curve._gap_info(base)
    counts = np.maximum(1, np.ceil(bounds / eps)).astype(np.int64)
    return _refine(base, counts)
