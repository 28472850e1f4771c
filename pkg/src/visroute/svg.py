"""Standalone SVG 1.1 rendering of domains, routed paths, and cone fans.

World coordinates are y-up; the renderer flips them into SVG's y-down
space while mapping the bounding box into the requested pixel width.
"""

from __future__ import annotations

from typing import Sequence

from .cones import ConeFan
from .domain import HOLE, PolygonalDomain, VertexLabel

_REGION_FILL = "#f3efe7"
_REGION_STROKE = "#33302b"
_HOLE_FILL = "#c7b9a5"
_TRACE_STROKE = "#c23b22"
_RAY_STROKE = "#2d6a9f"
_VERTEX_FILL = "#55504a"


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_domain(d: PolygonalDomain, *,
                  trace: Sequence[VertexLabel] | None = None,
                  fan: ConeFan | None = None,
                  width: float = 800.0) -> str:
    """SVG text: the region as an even-odd filled path (holes cut out
    and additionally filled in their own shade), an optional routed
    polyline, and an optional fan of t+1 rays at one vertex."""
    xs = [pt.x for b in d.boundaries for pt in b.vertices]
    ys = [pt.y for b in d.boundaries for pt in b.vertices]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    span = max(maxx - minx, maxy - miny) or 1.0
    pad = 0.05 * width
    scale = (width - 2.0 * pad) / span
    height = (maxy - miny) * scale + 2.0 * pad

    def m(pt) -> tuple[float, float]:
        return (pad + (pt.x - minx) * scale, pad + (maxy - pt.y) * scale)

    def ring_path(vertices) -> str:
        cmds = []
        for idx, pt in enumerate(vertices):
            px, py = m(pt)
            cmds.append(f"{'M' if idx == 0 else 'L'} {_fmt(px)} {_fmt(py)}")
        return " ".join(cmds) + " Z"

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    region = " ".join(ring_path(b.vertices) for b in d.boundaries)
    parts.append(f'<path d="{region}" fill="{_REGION_FILL}" '
                 f'fill-rule="evenodd" stroke="{_REGION_STROKE}" '
                 f'stroke-width="1.5"/>')
    for b in d.boundaries:
        if b.kind == HOLE:
            parts.append(f'<path d="{ring_path(b.vertices)}" '
                         f'fill="{_HOLE_FILL}" stroke="{_REGION_STROKE}" '
                         f'stroke-width="1"/>')
    for b in d.boundaries:
        for pt in b.vertices:
            px, py = m(pt)
            parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="2.2" '
                         f'fill="{_VERTEX_FILL}"/>')
    if fan is not None:
        apex = m(fan.apex_point)
        ray_len = 0.22 * width
        for ray in fan.rays:
            # rays are unit vectors in world space; flip y for SVG
            ex = apex[0] + ray.x * ray_len
            ey = apex[1] - ray.y * ray_len
            parts.append(f'<line x1="{_fmt(apex[0])}" y1="{_fmt(apex[1])}" '
                         f'x2="{_fmt(ex)}" y2="{_fmt(ey)}" '
                         f'stroke="{_RAY_STROKE}" stroke-width="1" '
                         f'stroke-dasharray="5 3"/>')
        parts.append(f'<circle cx="{_fmt(apex[0])}" cy="{_fmt(apex[1])}" '
                     f'r="3.5" fill="{_RAY_STROKE}"/>')
    if trace is not None and len(trace) >= 1:
        pts = [m(d.vertex(v)) for v in trace]
        coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)
        parts.append(f'<polyline points="{coords}" fill="none" '
                     f'stroke="{_TRACE_STROKE}" stroke-width="2.5" '
                     f'stroke-linejoin="round"/>')
        for idx, (px, py) in enumerate(pts):
            r = 4.0 if idx in (0, len(pts) - 1) else 3.0
            parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" '
                         f'r="{_fmt(r)}" fill="{_TRACE_STROKE}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
