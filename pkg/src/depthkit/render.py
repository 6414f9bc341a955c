"""Static SVG figures: curve plots, depth scatters, heatmaps.

Pure text generation on a fixed 800x500 canvas with a linear gray ramp
and red highlights. Coordinates are formatted at two decimals and no
timestamps are embedded, so identical inputs produce byte-identical
files. 3-D clouds are drawn through a fixed-angle orthographic
projection.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .model import DepthResult, FunctionalSample, PointCloud

__all__ = ["render_curves", "render_scatter", "render_heatmap"]

WIDTH = 800
HEIGHT = 500
MARGIN_LEFT = 60
MARGIN_RIGHT = 30
MARGIN_TOP = 50
MARGIN_BOTTOM = 45

GRAY = "#999999"
RED = "#cc0000"
AXIS = "#333333"


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class _Scale:
    """Linear map from a data interval to a pixel interval."""

    def __init__(self, lo: float, hi: float, a: float, b: float):
        if hi <= lo:
            lo, hi = lo - 0.5, hi + 0.5
        self.lo, self.hi, self.a, self.b = lo, hi, a, b

    def __call__(self, v: float) -> float:
        return self.a + (v - self.lo) / (self.hi - self.lo) * (self.b - self.a)


def _svg_open(title: str) -> list[str]:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH // 2}" y="28" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16" fill="{AXIS}">{escape(title)}</text>'
        )
    return parts


def _axes(xs: _Scale, ys: _Scale) -> list[str]:
    x0, x1 = xs.a, xs.b
    y0, y1 = ys.a, ys.b  # y0 is the bottom pixel row (larger value)
    parts = [
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y0)}" stroke="{AXIS}" stroke-width="1"/>',
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" y2="{_fmt(y1)}" stroke="{AXIS}" stroke-width="1"/>',
    ]
    for value, px in ((xs.lo, x0), (xs.hi, x1)):
        parts.append(
            f'<text x="{_fmt(px)}" y="{_fmt(y0 + 16)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11" fill="{AXIS}">{_fmt(value)}</text>'
        )
    for value, py in ((ys.lo, y0), (ys.hi, y1)):
        parts.append(
            f'<text x="{_fmt(x0 - 6)}" y="{_fmt(py + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="{AXIS}">{_fmt(value)}</text>'
        )
    return parts


def _write(path, parts: list[str]) -> None:
    parts.append("</svg>")
    with open(Path(path), "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(parts) + "\n")


def render_curves(sample: FunctionalSample, highlight_ids: Sequence[str], title: str, path) -> None:
    """One polyline per curve; highlighted ids in red on top, rest gray."""
    if sample.is_multivariate:
        raise ValueError("line plots support univariate samples only")
    if sample.n == 0:
        raise ValueError("empty sample")
    X = sample.matrix
    grid = sample.grid.points
    highlight = set(highlight_ids)
    unknown = highlight - set(sample.ids)
    if unknown:
        raise KeyError(f"highlight ids not in sample: {', '.join(sorted(unknown))}")

    xs = _Scale(float(grid.min()), float(grid.max()), MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
    ys = _Scale(float(X.min()), float(X.max()), HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)
    parts = _svg_open(title)
    parts += _axes(xs, ys)

    def polyline(values: np.ndarray, color: str, width: str) -> str:
        pts = " ".join(f"{_fmt(xs(g))},{_fmt(ys(v))}" for g, v in zip(grid, values))
        return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"/>'

    for curve in sample.curves:
        if curve.id not in highlight:
            parts.append(polyline(curve.values, GRAY, "1"))
    for curve in sample.curves:
        if curve.id in highlight:
            parts.append(polyline(curve.values, RED, "2"))

    for k, item_id in enumerate(sorted(highlight)):
        parts.append(
            f'<text x="{WIDTH - MARGIN_RIGHT}" y="{MARGIN_TOP + 14 * k}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="{RED}">{escape(item_id)}</text>'
        )
    _write(path, parts)


def _project(P: np.ndarray) -> np.ndarray:
    """Fixed-angle orthographic projection of a (m, 3) cloud to the plane."""
    ca, sa = math.cos(math.radians(35)), math.sin(math.radians(35))
    cb, sb = math.cos(math.radians(25)), math.sin(math.radians(25))
    x, y, z = P[:, 0], P[:, 1], P[:, 2]
    px = x * ca - y * sa
    py = (x * sa + y * ca) * sb + z * cb
    return np.column_stack([px, py])


def _depth_array(cloud: PointCloud, depths) -> np.ndarray:
    if isinstance(depths, DepthResult):
        return np.array([depths.depth_of(i) for i in cloud.ids])
    arr = np.asarray(depths, dtype=float)
    if arr.shape != (cloud.m,):
        raise ValueError(f"expected {cloud.m} depth values, got shape {arr.shape}")
    return arr


def render_scatter(
    cloud: PointCloud, depths, mode: str = "gradient", path=None, highlight_ids: Sequence[str] = (), title: str = ""
) -> None:
    """Scatter a 2-D or 3-D cloud, shaded by depth or with red highlights.

    Gradient mode maps depth linearly to darkness (deepest darkest);
    highlight mode marks the given ids red and the rest gray.
    """
    if mode not in ("gradient", "highlight"):
        raise ValueError(f"mode must be 'gradient' or 'highlight', got {mode!r}")
    if cloud.dim not in (2, 3):
        raise ValueError(f"scatter plots support 2 or 3 dimensions, got {cloud.dim}")
    if cloud.m == 0:
        raise ValueError("empty cloud")
    P = cloud.array
    flat = _project(P) if cloud.dim == 3 else P
    values = _depth_array(cloud, depths)

    xs = _Scale(float(flat[:, 0].min()), float(flat[:, 0].max()), MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
    ys = _Scale(float(flat[:, 1].min()), float(flat[:, 1].max()), HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)
    parts = _svg_open(title)
    parts += _axes(xs, ys)

    if mode == "gradient":
        lo, hi = float(values.min()), float(values.max())
        span = hi - lo
        for (px, py), v in zip(flat, values):
            t = 0.5 if span == 0 else (v - lo) / span
            c = int(round(230 - 180 * t))
            parts.append(
                f'<circle cx="{_fmt(xs(px))}" cy="{_fmt(ys(py))}" r="5" fill="rgb({c},{c},{c})"/>'
            )
    else:
        highlight = set(highlight_ids)
        unknown = highlight - set(cloud.ids)
        if unknown:
            raise KeyError(f"highlight ids not in cloud: {', '.join(sorted(unknown))}")
        order = [i for i, pid in enumerate(cloud.ids) if pid not in highlight]
        order += [i for i, pid in enumerate(cloud.ids) if pid in highlight]
        for i in order:
            color = RED if cloud.ids[i] in highlight else GRAY
            parts.append(
                f'<circle cx="{_fmt(xs(flat[i, 0]))}" cy="{_fmt(ys(flat[i, 1]))}" r="5" fill="{color}"/>'
            )
    _write(path, parts)


def render_heatmap(matrix, labels: Sequence[str], path, title: str = "") -> None:
    """Grayscale heatmap of a square matrix with 2-decimal annotations.

    Shading is scaled to the matrix's own [min, max] (lightest = min) and
    the matrix is rendered as given, never symmetrized.
    """
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"heatmap needs a square matrix, got shape {M.shape}")
    k = M.shape[0]
    if k != len(labels):
        raise ValueError(f"{len(labels)} labels for a {k}x{k} matrix")

    left, top = 110, 70
    cell = min((WIDTH - left - MARGIN_RIGHT) / k, (HEIGHT - top - MARGIN_BOTTOM) / k)
    lo, hi = float(M.min()), float(M.max())
    span = hi - lo

    parts = _svg_open(title)
    for j, label in enumerate(labels):
        parts.append(
            f'<text x="{_fmt(left + (j + 0.5) * cell)}" y="{_fmt(top - 10)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" fill="{AXIS}">{escape(str(label))}</text>'
        )
    for i, label in enumerate(labels):
        parts.append(
            f'<text x="{_fmt(left - 10)}" y="{_fmt(top + (i + 0.5) * cell + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12" fill="{AXIS}">{escape(str(label))}</text>'
        )
    for i in range(k):
        for j in range(k):
            t = 0.0 if span == 0 else (M[i, j] - lo) / span
            c = int(round(245 - 195 * t))
            x, y = left + j * cell, top + i * cell
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(cell)}" height="{_fmt(cell)}" '
                f'fill="rgb({c},{c},{c})" stroke="#ffffff" stroke-width="1"/>'
            )
            text_color = "#ffffff" if t > 0.55 else "#000000"
            parts.append(
                f'<text x="{_fmt(x + cell / 2)}" y="{_fmt(y + cell / 2 + 4)}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="12" fill="{text_color}">{M[i, j]:.2f}</text>'
            )
    _write(path, parts)
