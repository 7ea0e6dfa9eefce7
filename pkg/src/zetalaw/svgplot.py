"""Minimal static SVG line charts.

Data-only CSVs are the primary plot output; this module adds an optional
vector rendering without pulling in a plotting stack.  Axes are linear or
log10, ticks are chosen from round values, and each series becomes one
polyline with a legend entry.
"""

from __future__ import annotations

import math

from .errors import DomainError

_WIDTH, _HEIGHT = 640, 420
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 20, 36, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def write_line_chart(
    path,
    series: list[tuple[str, list[float], list[float]]],
    title: str = "",
    x_label: str = "",
    y_label: str = "",
    log_x: bool = False,
    log_y: bool = False,
) -> None:
    """Write a standalone SVG with one polyline per (label, xs, ys) series."""
    if not series:
        raise DomainError("nothing to plot")
    xs_all, ys_all = [], []
    for _, xs, ys in series:
        if len(xs) != len(ys) or not xs:
            raise DomainError("each series needs matching non-empty x and y lists")
        xs_all.extend(xs)
        ys_all.extend(ys)
    tx = _transform(xs_all, log_x, "x")
    ty = _transform(ys_all, log_y, "y")

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(value: float) -> float:
        lo, hi = tx
        t = 0.5 if hi == lo else ((math.log10(value) if log_x else value) - lo) / (hi - lo)
        return _MARGIN_L + t * plot_w

    def py(value: float) -> float:
        lo, hi = ty
        t = 0.5 if hi == lo else ((math.log10(value) if log_y else value) - lo) / (hi - lo)
        return _MARGIN_T + (1.0 - t) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2}" y="20" text-anchor="middle" font-size="14">'
        f"{_esc(title)}</text>",
    ]
    # axes box
    parts.append(
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#444"/>'
    )
    for value, label in _ticks(tx, log_x):
        x = px(value)
        parts.append(
            f'<line x1="{x:.1f}" y1="{_MARGIN_T + plot_h}" x2="{x:.1f}" '
            f'y2="{_MARGIN_T + plot_h + 5}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{_MARGIN_T + plot_h + 18}" text-anchor="middle">'
            f"{label}</text>"
        )
    for value, label in _ticks(ty, log_y):
        y = py(value)
        parts.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{y:.1f}" x2="{_MARGIN_L}" y2="{y:.1f}" '
            'stroke="#444"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{y + 4:.1f}" text-anchor="end">{label}</text>'
        )
    parts.append(
        f'<text x="{_MARGIN_L + plot_w / 2}" y="{_HEIGHT - 12}" text-anchor="middle">'
        f"{_esc(x_label)}</text>"
    )
    parts.append(
        f'<text x="18" y="{_MARGIN_T + plot_h / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {_MARGIN_T + plot_h / 2})">{_esc(y_label)}</text>'
    )
    for idx, (label, xs, ys) in enumerate(series):
        color = _COLORS[idx % len(_COLORS)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.6"/>'
        )
        ly = _MARGIN_T + 14 + 16 * idx
        parts.append(
            f'<line x1="{_MARGIN_L + plot_w - 130}" y1="{ly - 4}" '
            f'x2="{_MARGIN_L + plot_w - 110}" y2="{ly - 4}" stroke="{color}" '
            'stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L + plot_w - 104}" y="{ly}">{_esc(label)}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(parts) + "\n")


def _transform(values, log: bool, axis: str) -> tuple[float, float]:
    if log:
        positive = [v for v in values if v > 0]
        if not positive:
            raise DomainError(f"log {axis}-axis needs positive values")
        lo, hi = math.log10(min(positive)), math.log10(max(positive))
    else:
        lo, hi = min(values), max(values)
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def _ticks(bounds: tuple[float, float], log: bool, count: int = 5):
    lo, hi = bounds
    if log:
        first, last = math.ceil(lo), math.floor(hi)
        exps = range(first, last + 1) if last >= first else []
        ticks = [(10.0 ** e, f"1e{e}") for e in exps]
        return ticks or [(10.0 ** ((lo + hi) / 2), f"{10.0 ** ((lo + hi) / 2):.3g}")]
    span = hi - lo
    raw_step = span / max(count - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw_step)) if raw_step > 0 else 1.0
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if mag * mult >= raw_step:
            step = mag * mult
            break
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-12 * max(abs(hi), 1.0):
        ticks.append((v, f"{v:.4g}"))
        v += step
    return ticks


def _esc(text: str) -> str:
    return (
        str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )
