"""Grid-based verification: rasterization, content bounds, density
certificates, image classification and basic-sequence ratios.

A CoverageGrid is the numerical surrogate for a curve's image: cells hit
by samples approximate the trace, cells whose full 3x3 neighborhood is
hit are certified interior.  Inner and outer cell sums bound the Jordan
content of the image from below and above at the grid's resolution.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .kernel import Curve, PreconditionError, Rect, sample_plan, sup_norm

TAU_SF = 0.05
TAU_NORM = 1e-9

SF_CERTIFIED = "SF-certified-at-resolution"
TSF_EVIDENCE = "TSF-evidence"
THIN = "thin"
INCONCLUSIVE = "inconclusive"


@dataclass
class CoverageGrid:
    """Occupancy of an n x n grid over a frame rectangle.

    states[ix, iy] is 0 untouched, 1 hit, 2 interior-certified; certifying
    never unhits, so states are monotone under adding samples.
    """

    frame: Rect
    n: int
    states: np.ndarray
    sample_count: int
    out_of_frame: int

    @property
    def cell_area(self) -> float:
        return (self.frame.width / self.n) * (self.frame.height / self.n)

    def hit_count(self) -> int:
        return int(np.count_nonzero(self.states >= 1))

    def certified_count(self) -> int:
        return int(np.count_nonzero(self.states == 2))

    def all_hit(self) -> bool:
        return self.hit_count() == self.n * self.n


@dataclass
class ContentReport:
    inner: float
    outer: float
    boundary_mass: float
    interior_witness: Optional[tuple]
    grid: int
    frame: Rect

    def to_dict(self) -> dict:
        return {
            "inner": self.inner,
            "outer": self.outer,
            "boundary_mass": self.boundary_mass,
            "witness_cell": list(self.interior_witness) if self.interior_witness else None,
            "grid": self.grid,
            "frame": list(self.frame.as_tuple()),
        }


def _certify(hit: np.ndarray) -> np.ndarray:
    """states from a boolean hit grid: 2 where all 9 neighbors are hit."""
    n = hit.shape[0]
    pad = np.zeros((n + 2, n + 2), dtype=bool)
    pad[1:-1, 1:-1] = hit
    core = np.ones((n, n), dtype=bool)
    for dx in (0, 1, 2):
        for dy in (0, 1, 2):
            core &= pad[dx:dx + n, dy:dy + n]
    states = hit.astype(np.uint8)
    states[core] = 2
    return states


def _plan_for(curve: Curve, frame: Rect, n: int, n_samples: Optional[int],
              window=None) -> np.ndarray:
    cell = min(frame.width, frame.height) / n
    if n_samples is None:
        n_samples = n * n
    elif n_samples < n * n:
        warnings.warn(f"n_samples={n_samples} below {n * n}; coverage may alias",
                      stacklevel=3)
    plan = sample_plan(curve, cell / 2.0, window=window)
    lo, hi = (0.0, 1.0) if window is None else (float(window[0]), float(window[1]))
    base = np.linspace(lo, hi, max(2, min(n_samples, 4_000_000)))
    return np.union1d(plan, base)


def rasterize(curve: Curve, frame: Rect, n: int, n_samples: Optional[int] = None,
              window=None) -> CoverageGrid:
    """Mark the cells of an n x n grid over the frame that the curve's
    trace passes through.

    The sampling plan is deterministic: structural breakpoints refined so
    consecutive images move less than half a cell, united with an
    equispaced base of n_samples (default n^2) parameters.  Samples
    falling outside the frame are counted, not an error.  Restricting to
    a parameter window rasterizes only that part of the curve.
    """
    if n < 1:
        raise PreconditionError("grid must have at least one cell")
    if frame.is_degenerate():
        raise PreconditionError("degenerate frame")
    ts = _plan_for(curve, frame, n, n_samples, window)
    pts = curve.values(ts)
    return _rasterize_points(pts, frame, n)


def _rasterize_points(pts: np.ndarray, frame: Rect, n: int) -> CoverageGrid:
    inside = ((pts[:, 0] >= frame.x_lo) & (pts[:, 0] <= frame.x_hi)
              & (pts[:, 1] >= frame.y_lo) & (pts[:, 1] <= frame.y_hi))
    kept = pts[inside]
    ix = np.clip(((kept[:, 0] - frame.x_lo) / frame.width * n).astype(np.int64),
                 0, n - 1)
    iy = np.clip(((kept[:, 1] - frame.y_lo) / frame.height * n).astype(np.int64),
                 0, n - 1)
    hit = np.zeros((n, n), dtype=bool)
    hit[ix, iy] = True
    return CoverageGrid(frame=frame, n=n, states=_certify(hit),
                        sample_count=int(pts.shape[0]),
                        out_of_frame=int(pts.shape[0] - kept.shape[0]))


def downsample(grid: CoverageGrid, n: int) -> CoverageGrid:
    """Coarsen by block-OR; n must divide the source grid size."""
    if grid.n % n != 0:
        raise PreconditionError(f"{n} does not divide {grid.n}")
    f = grid.n // n
    hit = (grid.states >= 1).reshape(n, f, n, f).any(axis=(1, 3))
    return CoverageGrid(frame=grid.frame, n=n, states=_certify(hit),
                        sample_count=grid.sample_count,
                        out_of_frame=grid.out_of_frame)


def content_bounds(grid: CoverageGrid) -> ContentReport:
    """Inner and outer Jordan-content bounds from cell sums.

    inner sums interior-certified cells, outer sums hit cells; their gap
    is the boundary mass at this resolution.
    """
    area = grid.cell_area
    inner = grid.certified_count() * area
    outer = grid.hit_count() * area
    witness = None
    cert = np.argwhere(grid.states == 2)
    if cert.size:
        witness = (int(cert[0, 0]), int(cert[0, 1]))
    return ContentReport(inner=inner, outer=outer, boundary_mass=outer - inner,
                         interior_witness=witness, grid=grid.n, frame=grid.frame)


def certify_delta_dense(curve: Curve, target: Rect, delta: float,
                        n_samples: Optional[int] = None) -> bool:
    """True iff every cell of the ceil(side/delta)-grid over the target is
    hit; a true result certifies the image is delta-dense cellwise."""
    if delta <= 0:
        raise PreconditionError("delta must be positive")
    n = int(np.ceil(target.max_side / delta))
    return rasterize(curve, target, n, n_samples).all_hit()


def image_bounds(curve: Curve, eps_fraction: float = 1.0 / 512.0) -> Rect:
    """Bounding rectangle of the sampled image, padded by the sampling
    resolution so the true image is covered."""
    scale = max(curve.sup_bound, 1e-9)
    eps = scale * eps_fraction
    ts = sample_plan(curve, eps)
    pts = curve.values(ts)
    return Rect(float(pts[:, 0].min()) - eps, float(pts[:, 0].max()) + eps,
                float(pts[:, 1].min()) - eps, float(pts[:, 1].max()) + eps)


@dataclass
class ClassifyReport:
    verdict: str
    reports: list

    def to_dict(self) -> dict:
        return {"verdict": self.verdict,
                "reports": [r.to_dict() for r in self.reports]}


def classify(curve: Curve, grid_sizes: Sequence[int], frame: Optional[Rect] = None,
             tau_sf: float = TAU_SF, n_samples: Optional[int] = None) -> ClassifyReport:
    """Classify the image by content bounds across increasing grids.

    SF-certified-at-resolution: interior witness at the finest grid,
    boundary mass decreasing across grids and below tau_sf at the finest.
    TSF-evidence: witness exists but the boundary test fails.  thin:
    inner content zero at every grid.  inconclusive: anything else.
    """
    grids = list(grid_sizes)
    if not grids or any(b <= a for a, b in zip(grids, grids[1:])):
        raise PreconditionError("grid sizes must be strictly increasing")
    if frame is None:
        frame = image_bounds(curve)
    n_max = grids[-1]
    finest = rasterize(curve, frame, n_max, n_samples)
    reports = []
    for n in grids[:-1]:
        if n_max % n == 0:
            reports.append(content_bounds(downsample(finest, n)))
        else:
            reports.append(content_bounds(rasterize(curve, frame, n, n_samples)))
    reports.append(content_bounds(finest))
    top = reports[-1]
    masses = [r.boundary_mass for r in reports]
    decreasing = all(b < a for a, b in zip(masses, masses[1:]))
    if top.interior_witness is not None and decreasing and top.boundary_mass < tau_sf:
        verdict = SF_CERTIFIED
    elif top.interior_witness is not None:
        verdict = TSF_EVIDENCE
    elif all(r.inner == 0.0 for r in reports):
        verdict = THIN
    else:
        verdict = INCONCLUSIVE
    return ClassifyReport(verdict=verdict, reports=reports)


# ---------------------------------------------------------------------------
# Basic-sequence checks
# ---------------------------------------------------------------------------

def nikolskii_ratio(basis: Sequence[Curve], trials: int, max_len: int = 8,
                    seed: int = 0, n_samples: int = 1025) -> float:
    """Max over random coefficient draws of prefix-sum norm over full-sum
    norm, norms sampled in the sup metric.

    Disjoint-support families give a ratio of at most 1; a ratio above 1
    (or inf on a vanishing full sum) witnesses a basic-sequence failure.
    """
    basis = list(basis)
    if not basis:
        raise PreconditionError("empty basis")
    if trials < 1:
        raise PreconditionError("need at least one trial")
    ts = np.linspace(0.0, 1.0, n_samples)
    for b in basis:
        ts = np.union1d(ts, sample_plan(b, max(b.sup_bound, 1.0) / 64.0))
    mat = np.stack([b.values(ts) for b in basis])  # (nb, S, 2)
    for i, b in enumerate(basis):
        if not np.any(mat[i]):
            raise PreconditionError(f"basis member {i} is identically zero")
    rng = np.random.default_rng(seed)
    worst = 0.0
    cap = min(max_len, len(basis))
    for _ in range(trials):
        length = int(rng.integers(1, cap + 1))
        coefs = rng.uniform(-1.0, 1.0, size=length)
        partial = np.cumsum(coefs[:, None, None] * mat[:length], axis=0)
        norms = np.max(np.abs(partial), axis=(1, 2))
        running = np.maximum.accumulate(norms)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(norms > 0, running / norms, np.inf)
        worst = max(worst, float(np.max(ratios)))
    return worst


class DecayCheck(NamedTuple):
    ok: bool
    argmax_index: int  # 1-based position of the largest |c_n| * sup_n

    def __bool__(self):
        return self.ok


def coefficient_decay_check(coefs: Sequence[float],
                            basis_sup_norms: Sequence[float]) -> DecayCheck:
    """Locate the dominating coefficient of a finite combination.

    Finite sections always satisfy the decay surrogate; the reported index
    is the first position where |c_n| * sup_n is maximal.
    """
    coefs = list(coefs)
    sups = list(basis_sup_norms)
    if len(coefs) != len(sups):
        raise PreconditionError("coefficient and sup-norm lists differ in length")
    if not coefs:
        raise PreconditionError("empty coefficient list")
    weighted = np.abs(np.asarray(coefs, dtype=float)) * np.asarray(sups, dtype=float)
    return DecayCheck(ok=bool(np.all(np.isfinite(weighted))),
                      argmax_index=int(np.argmax(weighted)) + 1)


def write_pgm(grid: CoverageGrid, path: str) -> None:
    """Dump coverage as a portable graymap: white untouched, gray hit,
    black interior-certified."""
    shade = np.array([255, 128, 0], dtype=np.uint8)[grid.states]
    rows = shade.T[::-1]  # image rows top-down, y up in the plane
    with open(path, "w") as fh:
        fh.write(f"P2\n{grid.n} {grid.n}\n255\n")
        for row in rows:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")
