"""Small standalone SVG renderers (no plotting dependency).

Two chart types: the sorted node-dissimilarity curve with its elbow marker,
and a scatter with a fitted line for the cross-network study.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .linalg import LinearFit
from .ndi import NdiReport

__all__ = ["render_sorted_ndi_svg", "render_fit_scatter_svg"]

WIDTH = 760
HEIGHT = 460
MARGIN_LEFT = 70
MARGIN_RIGHT = 25
MARGIN_TOP = 40
MARGIN_BOTTOM = 55

DISSIMILAR_COLOR = "#c62828"  # red
SIMILAR_COLOR = "#2e7d32"  # green


def _x_map(lo: float, hi: float):
    span = (hi - lo) or 1.0
    inner = WIDTH - MARGIN_LEFT - MARGIN_RIGHT

    def to_px(x: float) -> float:
        return MARGIN_LEFT + (x - lo) / span * inner

    return to_px


def _y_map(lo: float, hi: float):
    span = (hi - lo) or 1.0
    inner = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def to_px(y: float) -> float:
        return HEIGHT - MARGIN_BOTTOM - (y - lo) / span * inner

    return to_px


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(title)}</text>',
    ]


def _axes(x_label: str, y_label: str) -> list[str]:
    x0, x1 = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    y0, y1 = HEIGHT - MARGIN_BOTTOM, MARGIN_TOP
    return [
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{(x0 + x1) / 2:.1f}" y="{HEIGHT - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{escape(x_label)}</text>',
        f'<text x="20" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 20 {(y0 + y1) / 2:.1f})">{escape(y_label)}</text>',
    ]


def render_sorted_ndi_svg(report: NdiReport, path: str) -> None:
    """Write the descending node-dissimilarity curve for one network.

    Ranks left of the elbow draw red, the rest green; a dashed vertical
    marker sits at the elbow rank (omitted for a flat, degenerate curve).
    """
    values = np.asarray(report.node_ndi, dtype=float)[report.rank_order]
    n = values.size
    lo = float(values.min())
    hi = float(values.max())
    if hi == lo:
        lo -= 0.5
        hi += 0.5
    pad = 0.05 * (hi - lo)
    to_x = _x_map(0.0, max(1.0, float(n - 1)))
    to_y = _y_map(lo - pad, hi + pad)

    parts = _header(f"Sorted node dissimilarity (n={n})")
    parts += _axes("rank (descending)", "node dissimilarity")

    points = " ".join(
        f"{to_x(i):.2f},{to_y(v):.2f}" for i, v in enumerate(values)
    )
    parts.append(
        f'<polyline points="{points}" fill="none" stroke="#555" stroke-width="1"/>'
    )
    if report.elbow_index > 0:
        ex = to_x(report.elbow_index)
        parts.append(
            f'<line x1="{ex:.2f}" y1="{MARGIN_TOP}" x2="{ex:.2f}" '
            f'y2="{HEIGHT - MARGIN_BOTTOM}" stroke="#444" stroke-width="1" '
            f'stroke-dasharray="5,4"/>'
        )
        parts.append(
            f'<text x="{ex + 5:.2f}" y="{MARGIN_TOP + 14}" font-family="sans-serif" '
            f'font-size="12">elbow</text>'
        )
    for i, v in enumerate(values):
        color = DISSIMILAR_COLOR if i < report.elbow_index else SIMILAR_COLOR
        parts.append(
            f'<circle cx="{to_x(i):.2f}" cy="{to_y(v):.2f}" r="3" fill="{color}"/>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def render_fit_scatter_svg(
    xs: list[float],
    ys: list[float],
    *,
    fit: LinearFit | None,
    x_label: str,
    y_label: str,
    title: str,
    path: str,
) -> None:
    """Write a scatter of (xs, ys) with the fitted line and its R^2."""
    xs_arr = np.asarray(xs, dtype=float)
    ys_arr = np.asarray(ys, dtype=float)
    if xs_arr.size != ys_arr.size or xs_arr.size == 0:
        raise ValueError("xs and ys must be equal-length and non-empty")

    def padded(lo: float, hi: float) -> tuple[float, float]:
        if hi == lo:
            lo -= 0.5
            hi += 0.5
        pad = 0.06 * (hi - lo)
        return lo - pad, hi + pad

    x_lo, x_hi = padded(float(xs_arr.min()), float(xs_arr.max()))
    y_lo, y_hi = padded(float(ys_arr.min()), float(ys_arr.max()))
    if fit is not None:
        for end in (fit.predict(np.array([x_lo, x_hi]))):
            y_lo = min(y_lo, float(end))
            y_hi = max(y_hi, float(end))
    to_x = _x_map(x_lo, x_hi)
    to_y = _y_map(y_lo, y_hi)

    parts = _header(title)
    parts += _axes(x_label, y_label)
    if fit is not None:
        ya, yb = fit.predict(np.array([x_lo, x_hi]))
        parts.append(
            f'<line x1="{to_x(x_lo):.2f}" y1="{to_y(float(ya)):.2f}" '
            f'x2="{to_x(x_hi):.2f}" y2="{to_y(float(yb)):.2f}" '
            f'stroke="#1565c0" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN_RIGHT - 8}" y="{MARGIN_TOP + 16}" '
            f'text-anchor="end" font-family="sans-serif" font-size="13">'
            f"R&#178; = {fit.r_squared:.6g}</text>"
        )
    for x, y in zip(xs_arr, ys_arr):
        parts.append(
            f'<circle cx="{to_x(float(x)):.2f}" cy="{to_y(float(y)):.2f}" r="4" '
            f'fill="#1565c0" fill-opacity="0.75"/>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
