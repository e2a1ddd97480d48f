"""Standalone SVG line charts for depth profiles.

Hand-rolled rather than delegated to a plotting stack so the output is a
pure, deterministic function of the inputs: no timestamps, no font metrics,
no library-version drift.  That keeps charts diffable and suitable as golden
files in regression tests.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError

_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)

_WIDTH = 760.0
_HEIGHT = 480.0
_MARGIN_LEFT = 72.0
_MARGIN_RIGHT = 170.0
_MARGIN_TOP = 40.0
_MARGIN_BOTTOM = 56.0


def _nice_step(span: float, target_ticks: int) -> float:
    raw = span / max(target_ticks, 1)
    power = math.floor(math.log10(raw))
    base = raw / 10.0**power
    for candidate in (1.0, 2.0, 2.5, 5.0, 10.0):
        if base <= candidate:
            return candidate * 10.0**power
    return 10.0 * 10.0**power


def _ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    step = _nice_step(hi - lo, target)
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + step * 1e-9:
        ticks.append(0.0 if abs(value) < step * 1e-9 else value)
        value += step
    return ticks


def _coord(value: float) -> str:
    return format(value, ".2f")


def _label(value: float) -> str:
    return format(value, "g")


def render_profile_svg(
    series,
    labels,
    title: str = "",
    x_label: str = "depth z (cm)",
    y_label: str = "concentration (mg/L)",
) -> str:
    """Render named (z, C) profiles as one SVG line chart.

    ``series`` is a sequence of (z_values, c_values) pairs; ``labels`` names
    each pair for the legend.  Every series needs at least two points.
    """
    series = [(np.asarray(z, dtype=float), np.asarray(c, dtype=float)) for z, c in series]
    labels = [str(label) for label in labels]
    if not series:
        raise ParameterError("need at least one series to draw")
    if len(labels) != len(series):
        raise ParameterError(f"{len(series)} series but {len(labels)} labels")
    for k, (z, c) in enumerate(series):
        if z.ndim != 1 or c.ndim != 1 or z.shape != c.shape:
            raise ParameterError(f"series {k}: z and C must be 1-D arrays of equal length")
        if z.size < 2:
            raise ParameterError(f"series {k}: need at least two points to draw a line")
        if not (np.isfinite(z).all() and np.isfinite(c).all()):
            raise ParameterError(f"series {k}: values must be finite")

    x_lo = min(float(z.min()) for z, _ in series)
    x_hi = max(float(z.max()) for z, _ in series)
    y_lo = min(float(c.min()) for _, c in series)
    y_hi = max(float(c.max()) for _, c in series)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(x: float) -> float:
        return _MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH:g} {_HEIGHT:g}" '
        f'font-family="sans-serif" font-size="12">'
    )
    parts.append(f'<rect width="{_WIDTH:g}" height="{_HEIGHT:g}" fill="white"/>')
    if title:
        parts.append(
            f'<text x="{(_MARGIN_LEFT + plot_w / 2):.2f}" y="24" text-anchor="middle" '
            f'font-size="15">{_escape(title)}</text>'
        )

    for tick in _ticks(x_lo, x_hi):
        x = px(tick)
        parts.append(
            f'<line x1="{_coord(x)}" y1="{_coord(_MARGIN_TOP)}" x2="{_coord(x)}" '
            f'y2="{_coord(_MARGIN_TOP + plot_h)}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_coord(x)}" y="{_coord(_MARGIN_TOP + plot_h + 18)}" '
            f'text-anchor="middle">{_label(tick)}</text>'
        )
    for tick in _ticks(y_lo, y_hi):
        y = py(tick)
        parts.append(
            f'<line x1="{_coord(_MARGIN_LEFT)}" y1="{_coord(y)}" '
            f'x2="{_coord(_MARGIN_LEFT + plot_w)}" y2="{_coord(y)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_coord(_MARGIN_LEFT - 8)}" y="{_coord(y + 4)}" '
            f'text-anchor="end">{_label(tick)}</text>'
        )

    frame = (
        f'<rect x="{_coord(_MARGIN_LEFT)}" y="{_coord(_MARGIN_TOP)}" '
        f'width="{_coord(plot_w)}" height="{_coord(plot_h)}" fill="none" '
        f'stroke="#333333" stroke-width="1"/>'
    )
    parts.append(frame)
    parts.append(
        f'<text x="{(_MARGIN_LEFT + plot_w / 2):.2f}" y="{_HEIGHT - 14:.2f}" '
        f'text-anchor="middle">{_escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="18" y="{(_MARGIN_TOP + plot_h / 2):.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {(_MARGIN_TOP + plot_h / 2):.2f})">{_escape(y_label)}</text>'
    )

    for k, (z, c) in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        points = " ".join(f"{px(float(xv)):.2f},{py(float(yv)):.2f}" for xv, yv in zip(z, c))
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.8"/>'
        )

    legend_x = _MARGIN_LEFT + plot_w + 14
    for k, label in enumerate(labels):
        color = _PALETTE[k % len(_PALETTE)]
        y = _MARGIN_TOP + 14 + 20 * k
        parts.append(
            f'<line x1="{_coord(legend_x)}" y1="{_coord(y)}" x2="{_coord(legend_x + 22)}" '
            f'y2="{_coord(y)}" stroke="{color}" stroke-width="1.8"/>'
        )
        parts.append(
            f'<text x="{_coord(legend_x + 28)}" y="{_coord(y + 4)}">{_escape(label)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
