"""Dependency-free SVG line charts for comparing two or more series."""

from __future__ import annotations

import math
from typing import BinaryIO, Sequence

from .errors import InsufficientData, IoError

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 170, 50, 60


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.floor(lo / step) * step
    ticks = []
    t = start
    while t <= hi + step * 1e-9:
        ticks.append(round(t, 10))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def render_svg(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str,
    sink: BinaryIO,
    x_label: str = "n",
    y_label: str = "",
) -> None:
    """Write a standalone SVG with one polyline per ``(name, xs, ys)`` series.

    Output depends only on the arguments, so equal inputs give equal bytes.
    """
    if not series:
        raise InsufficientData("nothing to plot")
    for name, xs, ys in series:
        if len(xs) != len(ys):
            raise InsufficientData(f"series {name!r} has mismatched x and y lengths")
        if len(xs) < 2:
            raise InsufficientData(f"series {name!r} needs at least two points")

    all_x = [float(v) for _, xs, _ in series for v in xs]
    all_y = [float(v) for _, _, ys in series for v in ys]
    x_ticks = _nice_ticks(min(all_x), max(all_x))
    y_ticks = _nice_ticks(min(0.0, min(all_y)), max(all_y))
    x0, x1 = x_ticks[0], x_ticks[-1]
    y0, y1 = y_ticks[0], y_ticks[-1]
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x0) / (x1 - x0) * plot_w

    def py(y):
        return TOP + plot_h - (y - y0) / (y1 - y0) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="28" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">{_escape(title)}</text>',
        f'<g stroke="#000000" stroke-width="1">'
        f'<line x1="{LEFT}" y1="{TOP + plot_h}" x2="{LEFT + plot_w}" y2="{TOP + plot_h}"/>'
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + plot_h}"/></g>',
    ]
    for t in x_ticks:
        x = px(t)
        out.append(
            f'<line x1="{x:.2f}" y1="{TOP + plot_h}" x2="{x:.2f}" y2="{TOP + plot_h + 5}" stroke="#000000"/>'
            f'<text x="{x:.2f}" y="{TOP + plot_h + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>'
        )
    for t in y_ticks:
        y = py(t)
        out.append(
            f'<line x1="{LEFT - 5}" y1="{y:.2f}" x2="{LEFT}" y2="{y:.2f}" stroke="#000000"/>'
            f'<line x1="{LEFT}" y1="{y:.2f}" x2="{LEFT + plot_w}" y2="{y:.2f}" stroke="#e0e0e0"/>'
            f'<text x="{LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>'
        )
    out.append(
        f'<text x="{LEFT + plot_w / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{_escape(x_label)}</text>'
    )
    if y_label:
        out.append(
            f'<text x="18" y="{TOP + plot_h / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="13" transform="rotate(-90 18 {TOP + plot_h / 2:.1f})">{_escape(y_label)}</text>'
        )
    for i, (name, xs, ys) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        points = " ".join(f"{px(float(x)):.2f},{py(float(y)):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{points}"/>')
        ly = TOP + 20 + 22 * i
        lx = LEFT + plot_w + 15
        out.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="2"/>'
            f'<text x="{lx + 30}" y="{ly + 4}" font-family="sans-serif" font-size="12">{_escape(name)}</text>'
        )
    out.append("</svg>")
    try:
        sink.write(("\n".join(out) + "\n").encode("utf-8"))
    except OSError as exc:
        raise IoError(str(exc)) from exc
