"""Self-contained SVG renderings (fringe plot, deviation-matrix bars).

Hand-written markup keeps output byte-stable across runs and free of
plotting-library metadata.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")


def _header(w, h):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" '
        'font-family="sans-serif" font-size="12">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]


def fringe_plot(series: dict[str, list[tuple[float, float]]], title: str = "") -> str:
    """Line plot of p against theta, one polyline per labelled series."""
    w, h, left, right, top, bottom = 640, 420, 60, 150, 40, 50
    pw, ph = w - left - right, h - top - bottom
    all_t = [t for pts in series.values() for t, _ in pts] or [0.0, 2 * math.pi]
    t0, t1 = min(all_t), max(all_t)
    if t1 == t0:
        t1 = t0 + 1.0

    def x(t):
        return left + (t - t0) / (t1 - t0) * pw

    def y(p):
        return top + (1.0 - p) * ph

    out = _header(w, h)
    out.append(f'<text x="{w / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for k in range(5):
        p = k / 4
        out.append(f'<line x1="{left - 4}" y1="{y(p):.2f}" x2="{left}" y2="{y(p):.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{y(p) + 4:.2f}" text-anchor="end">{p:.2f}</text>')
    for k in range(5):
        t = t0 + k * (t1 - t0) / 4
        out.append(f'<line x1="{x(t):.2f}" y1="{top + ph}" x2="{x(t):.2f}" y2="{top + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{x(t):.2f}" y="{top + ph + 18}" text-anchor="middle">{t:.2f}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{h - 10}" text-anchor="middle">theta (rad)</text>')
    out.append(
        f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2:.1f})">Tr(delta |10&gt;&lt;10|)</text>'
    )
    for i, (label, pts) in enumerate(series.items()):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{x(t):.2f},{y(p):.2f}" for t, p in pts)
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>')
        for t, p in pts:
            out.append(f'<circle cx="{x(t):.2f}" cy="{y(p):.2f}" r="2.5" fill="{color}"/>')
        ly = top + 10 + 18 * i
        out.append(f'<line x1="{w - right + 15}" y1="{ly}" x2="{w - right + 35}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{w - right + 40}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def matrix_bars(m: np.ndarray, title: str = "", labels=("00", "01", "10", "11")) -> str:
    """Oblique-projection 3D bar chart of a real 4x4 matrix."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    w, h = 560, 460
    cell, dx, dy = 60.0, 0.5, 0.35  # depth axis drawn as a sheared offset
    ox, oy = 120.0, 330.0
    scale = 180.0 / max(1e-12, np.abs(m).max())

    def base(i, j):
        # column j runs right, row i recedes into depth
        return ox + j * cell + i * cell * dx, oy - i * cell * dy

    out = _header(w, h)
    out.append(f'<text x="{w / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for i in range(n + 1):
        x0, y0 = base(i, 0)
        x1, y1 = base(i, n)
        out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" stroke="#bbb"/>')
    for j in range(n + 1):
        x0, y0 = base(0, j)
        x1, y1 = base(n, j)
        out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" stroke="#bbb"/>')
    # back rows first so nearer bars overdraw them
    for i in reversed(range(n)):
        for j in range(n):
            v = m[i, j]
            hgt = v * scale
            x0, y0 = base(i + 0.2, j + 0.2)
            bw = cell * 0.6
            top_y = y0 - max(hgt, 0.0)
            face = "#4878cf" if v >= 0 else "#d65f5f"
            side = "#2f5597" if v >= 0 else "#a33c3c"
            bh = abs(hgt)
            sx, sy = cell * 0.6 * dx, cell * 0.6 * dy
            out.append(
                f'<polygon points="{x0 + bw:.2f},{top_y:.2f} {x0 + bw + sx:.2f},{top_y - sy:.2f} '
                f'{x0 + bw + sx:.2f},{top_y - sy + bh:.2f} {x0 + bw:.2f},{top_y + bh:.2f}" fill="{side}"/>'
            )
            out.append(
                f'<polygon points="{x0:.2f},{top_y:.2f} {x0 + sx:.2f},{top_y - sy:.2f} '
                f'{x0 + bw + sx:.2f},{top_y - sy:.2f} {x0 + bw:.2f},{top_y:.2f}" fill="{side}" opacity="0.7"/>'
            )
            out.append(f'<rect x="{x0:.2f}" y="{top_y:.2f}" width="{bw:.2f}" height="{bh:.2f}" fill="{face}"/>')
            out.append(f'<text x="{x0 + bw / 2:.2f}" y="{top_y - 4:.2f}" text-anchor="middle" font-size="9">{v:.3f}</text>')
    for j, lab in enumerate(labels):
        x0, y0 = base(0, j + 0.5)
        out.append(f'<text x="{x0:.2f}" y="{y0 + 18:.2f}" text-anchor="middle">|{lab}&gt;</text>')
    for i, lab in enumerate(labels):
        x0, y0 = base(i + 0.5, 0)
        out.append(f'<text x="{x0 - 10:.2f}" y="{y0 + 4:.2f}" text-anchor="end">&lt;{lab}|</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
