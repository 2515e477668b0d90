"""Static SVG pictures of HN polygons under a ceiling.

Output depends only on the input vertices: fixed canvas, fixed number
formatting, polygons drawn in sorted order.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .errors import EndpointMismatch
from .hn_polygon import HNPolygon, chord

WIDTH = 480
HEIGHT = 360
MARGIN = 30
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


def _num(v: float) -> str:
    return f"{v:.2f}"


def render_svg(polygons: Sequence[HNPolygon], ceiling: HNPolygon) -> str:
    for p in polygons:
        if p.endpoint != ceiling.endpoint:
            raise EndpointMismatch(f"{p} does not end at {ceiling.endpoint}")
    r = ceiling.rank
    everything = [ceiling, chord(*ceiling.endpoint), *polygons]
    ys = [y for p in everything for _, y in p.vertices]
    ymin, ymax = min(ys), max(ys)
    if ymin == ymax:
        ymax += 1
    sx = (WIDTH - 2 * MARGIN) / r
    sy = (HEIGHT - 2 * MARGIN) / (ymax - ymin)

    def pt(x, y):
        return f"{_num(MARGIN + x * sx)},{_num(HEIGHT - MARGIN - (y - ymin) * sy)}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>']
    for x in range(r + 1):
        for y in range(ymin, ymax + 1):
            cx, cy = pt(x, y).split(",")
            out.append(f'<circle cx="{cx}" cy="{cy}" r="1.5" fill="#bbbbbb"/>')
    line = lambda p: " ".join(pt(x, y) for x, y in p.vertices)  # noqa: E731
    out.append(f'<polyline points="{line(ceiling)}" fill="none" stroke="black" '
               f'stroke-width="1.5" stroke-dasharray="6,4"/>')
    for i, p in enumerate(sorted(polygons)):
        out.append(f'<polyline points="{line(p)}" fill="none" '
                   f'stroke="{PALETTE[i % len(PALETTE)]}" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_polygons(polygons: Sequence[HNPolygon], ceiling: HNPolygon, path) -> Path:
    """Write the picture to ``path``; OSError propagates to the caller."""
    path = Path(path)
    path.write_text(render_svg(polygons, ceiling), encoding="utf-8")
    return path
