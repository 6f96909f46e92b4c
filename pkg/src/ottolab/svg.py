"""Tiny dependency-free SVG charts: polyline plots and heatmaps."""

from __future__ import annotations

import math

_W, _H = 720, 480
_ML, _MR, _MT, _MB = 70, 20, 30, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _finite(values):
    return [v for v in values if v is not None and math.isfinite(v)]


def _ticks(lo: float, hi: float, n: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def line_chart(x, series: dict, xlabel: str, title: str) -> str:
    """Polyline chart of one or more named series against x."""
    xs = _finite(x)
    ys = _finite([v for vals in series.values() for v in vals])
    if not xs or not ys:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def px(v):
        return _ML + (v - x0) / (x1 - x0) * pw

    def py(v):
        return _MT + ph - (v - y0) / (y1 - y0) * ph

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}">',
             f'<rect width="{_W}" height="{_H}" fill="white"/>',
             f'<text x="{_W/2}" y="20" text-anchor="middle" '
             f'font-family="sans-serif" font-size="14">{title}</text>']
    # axes and ticks
    parts.append(f'<line x1="{_ML}" y1="{_MT+ph}" x2="{_ML+pw}" y2="{_MT+ph}" '
                 'stroke="black"/>')
    parts.append(f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_MT+ph}" '
                 'stroke="black"/>')
    for t in _ticks(x0, x1):
        parts.append(f'<line x1="{px(t):.2f}" y1="{_MT+ph}" x2="{px(t):.2f}" '
                     f'y2="{_MT+ph+5}" stroke="black"/>')
        parts.append(f'<text x="{px(t):.2f}" y="{_MT+ph+20}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>')
    for t in _ticks(y0, y1):
        parts.append(f'<line x1="{_ML-5}" y1="{py(t):.2f}" x2="{_ML}" '
                     f'y2="{py(t):.2f}" stroke="black"/>')
        parts.append(f'<text x="{_ML-8}" y="{py(t)+4:.2f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>')
    parts.append(f'<text x="{_ML+pw/2}" y="{_H-10}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="12">{xlabel}</text>')
    for i, (name, vals) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        pts = [(px(a), py(b)) for a, b in zip(x, vals)
               if b is not None and math.isfinite(b)]
        if pts:
            path = " ".join(f"{a:.2f},{b:.2f}" for a, b in pts)
            parts.append(f'<polyline points="{path}" fill="none" '
                         f'stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{_ML+pw-5}" y="{_MT+15+14*i}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11" '
                     f'fill="{color}">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def _color(frac: float) -> str:
    """Blue -> white -> red, clipped to [0, 1]."""
    f = min(1.0, max(0.0, frac))
    if f < 0.5:
        s = f / 0.5
        r, g, b = int(40 + 215 * s), int(60 + 195 * s), 255
    else:
        s = (f - 0.5) / 0.5
        r, g, b = 255, int(255 - 195 * s), int(255 - 215 * s)
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap(xs, ys, grid, xlabel: str, ylabel: str, title: str) -> str:
    """Heatmap of grid[j][i] over (xs[i], ys[j]) cells."""
    flat = _finite([v for row in grid for v in row])
    lo = min(flat) if flat else 0.0
    hi = max(flat) if flat else 1.0
    if hi == lo:
        hi = lo + 1.0
    pw, ph = _W - _ML - _MR, _H - _MT - _MB
    cw, ch = pw / max(1, len(xs)), ph / max(1, len(ys))
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}">',
             f'<rect width="{_W}" height="{_H}" fill="white"/>',
             f'<text x="{_W/2}" y="20" text-anchor="middle" '
             f'font-family="sans-serif" font-size="14">{title} '
             f'[{_fmt(lo)}, {_fmt(hi)}]</text>']
    for j in range(len(ys)):
        for i in range(len(xs)):
            v = grid[j][i]
            fill = "#cccccc" if v is None or not math.isfinite(v) \
                else _color((v - lo) / (hi - lo))
            parts.append(f'<rect x="{_ML+i*cw:.2f}" y="{_MT+ph-(j+1)*ch:.2f}" '
                         f'width="{cw+0.5:.2f}" height="{ch+0.5:.2f}" '
                         f'fill="{fill}"/>')
    parts.append(f'<text x="{_ML+pw/2}" y="{_H-10}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="12">{xlabel}</text>')
    parts.append(f'<text x="15" y="{_MT+ph/2}" font-family="sans-serif" '
                 f'font-size="12" transform="rotate(-90 15 {_MT+ph/2})" '
                 f'text-anchor="middle">{ylabel}</text>')
    parts.append("</svg>")
    return "\n".join(parts)
