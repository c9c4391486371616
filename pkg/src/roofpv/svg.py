"""Minimal deterministic SVG bar and line charts with no plotting dependency."""

from __future__ import annotations

import math
from pathlib import Path

COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")

WIDTH, HEIGHT = 800, 480
LEFT, RIGHT, TOP, BOTTOM = 80, 160, 50, 60


def _esc(text):
    return (str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


def _fmt(x):
    return f"{x:.2f}"


def _nice_ticks(lo, hi, n=5):
    if hi == lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for m in (1, 2, 2.5, 5, 10):
        step = m * mag
        if step >= raw:
            break
    start = step * (lo // step)
    ticks = []
    t = start
    while t <= hi + step * 1e-9:
        ticks.append(round(t, 10))
        t += step
    if ticks[-1] < hi:
        ticks.append(round(t, 10))
    return ticks


def _frame(title, x_label, y_label, y_ticks, y_map):
    plot_w = WIDTH - LEFT - RIGHT
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="28" text-anchor="middle" font-size="16">{_esc(title)}</text>',
    ]
    for t in y_ticks:
        y = y_map(t)
        parts.append(f'<line x1="{LEFT}" y1="{_fmt(y)}" x2="{LEFT + plot_w}" y2="{_fmt(y)}" stroke="#ddd"/>')
        parts.append(f'<text x="{LEFT - 6}" y="{_fmt(y + 4)}" text-anchor="end">{t:g}</text>')
    parts.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{HEIGHT - BOTTOM}" stroke="black"/>')
    parts.append(f'<line x1="{LEFT}" y1="{HEIGHT - BOTTOM}" x2="{LEFT + plot_w}" y2="{HEIGHT - BOTTOM}" '
                 f'stroke="black"/>')
    parts.append(f'<text x="{LEFT + plot_w / 2:.0f}" y="{HEIGHT - 15}" text-anchor="middle">{_esc(x_label)}</text>')
    parts.append(f'<text x="18" y="{(TOP + HEIGHT - BOTTOM) / 2:.0f}" text-anchor="middle" '
                 f'transform="rotate(-90 18 {(TOP + HEIGHT - BOTTOM) / 2:.0f})">{_esc(y_label)}</text>')
    return parts


def _legend(names):
    x = WIDTH - RIGHT + 15
    out = []
    for i, name in enumerate(names):
        y = TOP + 10 + 20 * i
        out.append(f'<rect x="{x}" y="{y - 9}" width="12" height="12" fill="{COLORS[i % len(COLORS)]}"/>')
        out.append(f'<text x="{x + 18}" y="{y + 1}">{_esc(name)}</text>')
    return out


def _y_mapper(ticks):
    lo, hi = min(ticks), max(ticks)
    span = hi - lo or 1.0
    plot_h = HEIGHT - TOP - BOTTOM
    return lambda v: TOP + plot_h * (hi - v) / span


def bar_chart(categories, series, title="", x_label="", y_label=""):
    """Grouped bars; ``series`` is a list of (name, values) aligned with ``categories``."""
    values = [v for _, vals in series for v in vals]
    ticks = _nice_ticks(min(0.0, min(values, default=0.0)), max(values, default=1.0))
    y_map = _y_mapper(ticks)
    parts = _frame(title, x_label, y_label, ticks, y_map)
    plot_w = WIDTH - LEFT - RIGHT
    group_w = plot_w / max(len(categories), 1)
    bar_w = group_w * 0.8 / max(len(series), 1)
    zero = y_map(0.0)
    for j, cat in enumerate(categories):
        gx = LEFT + j * group_w + group_w * 0.1
        for i, (_, vals) in enumerate(series):
            v = vals[j]
            y = min(y_map(v), zero)
            h = abs(zero - y_map(v))
            parts.append(f'<rect x="{_fmt(gx + i * bar_w)}" y="{_fmt(y)}" width="{_fmt(bar_w)}" '
                         f'height="{_fmt(h)}" fill="{COLORS[i % len(COLORS)]}"/>')
        parts.append(f'<text x="{_fmt(LEFT + (j + 0.5) * group_w)}" y="{HEIGHT - BOTTOM + 16}" '
                     f'text-anchor="middle">{_esc(cat)}</text>')
    parts += _legend([name for name, _ in series])
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def line_chart(x, series, title="", x_label="", y_label=""):
    """Lines over shared x values; ``series`` is a list of (name, values)."""
    values = [v for _, vals in series for v in vals]
    ticks = _nice_ticks(min(values, default=0.0), max(values, default=1.0))
    y_map = _y_mapper(ticks)
    parts = _frame(title, x_label, y_label, ticks, y_map)
    plot_w = WIDTH - LEFT - RIGHT
    x_lo, x_hi = min(x), max(x)
    x_span = (x_hi - x_lo) or 1.0

    def x_map(v):
        return LEFT + plot_w * (v - x_lo) / x_span

    if ticks[0] < 0 < ticks[-1]:
        parts.append(f'<line x1="{LEFT}" y1="{_fmt(y_map(0))}" x2="{LEFT + plot_w}" y2="{_fmt(y_map(0))}" '
                     f'stroke="#888" stroke-dasharray="4 3"/>')
    for xv in _nice_ticks(x_lo, x_hi):
        if x_lo <= xv <= x_hi:
            parts.append(f'<text x="{_fmt(x_map(xv))}" y="{HEIGHT - BOTTOM + 16}" '
                         f'text-anchor="middle">{xv:g}</text>')
    for i, (_, vals) in enumerate(series):
        pts = " ".join(f"{_fmt(x_map(a))},{_fmt(y_map(b))}" for a, b in zip(x, vals))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{COLORS[i % len(COLORS)]}" '
                     f'stroke-width="2"/>')
    parts += _legend([name for name, _ in series])
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write(svg_text, path):
    Path(path).write_text(svg_text)
