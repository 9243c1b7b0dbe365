"""Render a curve trace as an SVG polyline."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from .kernel import Curve


def render_svg(curve: Curve, path: str, n_samples: int = 10_000,
               size: int = 800, stroke: float | None = None) -> None:
    ts = np.linspace(0.0, 1.0, n_samples)
    pts = curve.values(ts)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
    pad = 0.05 * span
    sc = size / (span + 2 * pad)
    xs = (pts[:, 0] - lo[0] + pad) * sc
    ys = size - (pts[:, 1] - lo[1] + pad) * sc  # plane y up, svg y down
    if stroke is None:
        stroke = size / 1000.0
    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                      width=f"{size}", height=f"{size}",
                      viewBox=f"0 0 {size} {size}")
    ET.SubElement(root, "rect", x="0", y="0", width=str(size), height=str(size),
                  fill="white")
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
    ET.SubElement(root, "polyline", points=coords, fill="none", stroke="black",
                  attrib={"stroke-width": f"{stroke:.3f}"})
    ET.ElementTree(root).write(path)
