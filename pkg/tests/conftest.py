import numpy as np
import pytest

from curvefill import (Breakpoints, Constant, Polygonal, Rect, UNIT_SQUARE,
                       hilbert)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


@pytest.fixture
def unit_hilbert4():
    return hilbert(4, UNIT_SQUARE)


@pytest.fixture
def dyadic8():
    return Breakpoints.dyadic(8)


def random_polygonal(rng, n_vertices=8, box=UNIT_SQUARE):
    ts = np.sort(rng.uniform(0.05, 0.95, n_vertices - 2))
    ts = np.concatenate([[0.0], ts, [1.0]])
    xs = rng.uniform(box.x_lo, box.x_hi, n_vertices)
    ys = rng.uniform(box.y_lo, box.y_hi, n_vertices)
    return Polygonal(tuple(ts), tuple(zip(xs, ys)))


def quantize_cells(points, frame: Rect, n: int):
    """Independent cell quantization used as the coverage oracle."""
    pts = np.asarray(points, dtype=float)
    ix = np.floor((pts[:, 0] - frame.x_lo) / frame.width * n).astype(int)
    iy = np.floor((pts[:, 1] - frame.y_lo) / frame.height * n).astype(int)
    ix = np.clip(ix, 0, n - 1)
    iy = np.clip(iy, 0, n - 1)
    return set(zip(ix.tolist(), iy.tolist()))
