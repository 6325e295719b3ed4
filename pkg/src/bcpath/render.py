"""SVG scenes: adjacent circles, the region and its parts, and paths.

Drawing happens in the document frame inside a ``scale(1,-1)`` group so the
y axis points up; arcs therefore keep their mathematical sweep direction.
"""

from __future__ import annotations

import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .docformat import ProblemDocument
from .geometry import Point, adjacent_circles
from .region import DividingLine, OmegaRegion
from .report import ReportDocument
from .segments import Arc, Line, Segment

WIDTH = 800
COLORS = {
    "TrappedInOmega": "#1f77b4",
    "Free": "#2ca02c",
    "Unresolved": "#7f7f7f",
    "Plan": "#d62728",
    "Extended": "#9467bd",
    "Invalid": "#000000",
}
SHADES = {"R1": "#fde0c5", "R2": "#c6dbef", "R3": "#d9f0d3"}


def _n(v: float) -> str:
    if abs(v) < 1e-9:
        return "0"
    return format(v, ".6f").rstrip("0").rstrip(".")


def _arc_commands(arc: Arc) -> List[str]:
    # split long arcs so no piece reaches a half turn
    n = max(1, int(math.ceil(arc.sweep / (math.pi / 2))))
    out = []
    for k in range(1, n + 1):
        p = arc.point_at(arc.length * k / n)
        sweep_flag = 1 if arc.signed_sweep > 0 else 0
        out.append(f"A {_n(arc.radius)} {_n(arc.radius)} 0 0 {sweep_flag} {_n(p[0])} {_n(p[1])}")
    return out


def path_data(segs: Sequence[Segment], close: bool = False) -> str:
    start = segs[0].start_point
    cmds = [f"M {_n(start[0])} {_n(start[1])}"]
    for seg in segs:
        if isinstance(seg, Line):
            cmds.append(f"L {_n(seg.end[0])} {_n(seg.end[1])}")
        else:
            cmds.extend(_arc_commands(seg))
    if close:
        cmds.append("Z")
    return " ".join(cmds)


def clip_halfplane(poly: List[Point], line: DividingLine, keep_sign: float) -> List[Point]:
    """Sutherland-Hodgman step: keep the part where sign(side) == keep_sign."""
    out: List[Point] = []
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        sa, sb = keep_sign * line.side(a), keep_sign * line.side(b)
        if sa >= 0.0:
            out.append(a)
        if (sa >= 0.0) != (sb >= 0.0):
            t = sa / (sa - sb)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return out


def _polygon(points: Iterable[Point], fill: str, ident: str) -> str:
    pts = " ".join(f"{_n(p[0])},{_n(p[1])}" for p in points)
    return f'<polygon id="{ident}" points="{pts}" fill="{fill}" stroke="none"/>'


def _circle(c: Point, r: float, cls: str, extra: str = "") -> str:
    return f'<circle class="{cls}" cx="{_n(c[0])}" cy="{_n(c[1])}" r="{_n(r)}"{extra}/>'


def _bounds(points: np.ndarray) -> Tuple[float, float, float, float]:
    lo, hi = points.min(axis=0), points.max(axis=0)
    w, h = hi - lo
    m = 0.1 * max(w, h, 1e-6)
    return lo[0] - m, lo[1] - m, hi[0] + m, hi[1] + m


def _verdict_color(verdict: str) -> str:
    return COLORS.get(verdict, "#ff7f0e")


def render_scene(doc: ProblemDocument, report: ReportDocument) -> bytes:
    instance = doc.instance()
    back = instance.original_frame.inverse()
    rx, ry = instance.raw_x, instance.raw_y
    # canonical unit circles mapped back to the document frame (radius 1/kappa)
    circles = [(back.apply_point(c.center), 1.0 / instance.scale, f"adjacent-{name}")
               for cfg, tag in ((instance.x, "x"), (instance.y, "y"))
               for c, name in zip(adjacent_circles(cfg), (f"left-{tag}", f"right-{tag}"))]

    pts = [np.array([[c[0] - r, c[1] - r], [c[0] + r, c[1] + r]]) for c, r, _ in circles]
    region: OmegaRegion = report.region
    boundary = None
    if region is not None:
        boundary = [seg.transformed(back) for seg in region.boundary_segments]
        for name, c in region.six_circles():
            q = back.apply_point(c)
            r = 1.0 / instance.scale
            pts.append(np.array([[q[0] - r, q[1] - r], [q[0] + r, q[1] + r]]))
    drawn = []
    for label, path, verdict in report.paths:
        p = path.transformed(back)
        _, s = p.sample(max(p.total_length / 400.0, 1e-3))
        pts.append(s)
        drawn.append((label, p, verdict))
    x0, y0, x1, y1 = _bounds(np.vstack(pts))
    w, h = x1 - x0, y1 - y0
    height = int(round(WIDTH * h / w))
    stroke = _n(0.004 * max(w, h))
    d1, d2, d3 = _n(0.01 * max(w, h)), _n(0.006 * max(w, h)), _n(0.016 * max(w, h))

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" '
           f'viewBox="{_n(x0)} {_n(-y1)} {_n(w)} {_n(h)}">']
    if boundary is not None:
        out.append(f'<defs><clipPath id="omega-clip"><path d="{path_data(boundary, close=True)}"/></clipPath></defs>')
    out.append(f'<g transform="scale(1,-1)" fill="none" stroke-width="{stroke}">')

    out.append('<g id="adjacent-circles" stroke="#999999">')
    out.extend(_circle(c, r, n) for c, r, n in circles)
    out.append("</g>")

    if region is not None:
        out.append('<g id="region">')
        out.append(f'<g id="omega-circles" stroke="#bbbbbb" stroke-dasharray="{d1} {d1}">')
        for name, c in region.six_circles():
            out.append(_circle(back.apply_point(c), 1.0 / instance.scale, "omega-circle", f' data-name="{name}"'))
        out.append("</g>")
        box = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        L1 = DividingLine(back.apply_point(region.L1.point), back.apply_point(region.L1.through))
        L2 = DividingLine(back.apply_point(region.L2.point), back.apply_point(region.L2.through))
        s1 = math.copysign(1.0, L1.side(rx.position))
        s3 = math.copysign(1.0, L2.side(ry.position))
        parts = {
            "R1": clip_halfplane(box, L1, s1),
            "R3": clip_halfplane(clip_halfplane(box, L2, s3), L1, -s1),
            "R2": clip_halfplane(clip_halfplane(box, L1, -s1), L2, -s3),
        }
        out.append('<g id="subregions" clip-path="url(#omega-clip)">')
        for name in ("R1", "R2", "R3"):
            if len(parts[name]) >= 3:
                out.append(_polygon(parts[name], SHADES[name], f"subregion-{name}"))
        out.append("</g>")
        out.append(f'<path id="omega-boundary" stroke="#333333" d="{path_data(boundary, close=True)}"/>')
        out.append(f'<g id="dividing-lines" stroke="#666666" stroke-dasharray="{d2} {d2}">')
        for name, line in (("L1", L1), ("L2", L2)):
            u = line.unit
            big = 2.0 * max(w, h)
            a = (line.point[0] - big * u[0], line.point[1] - big * u[1])
            b = (line.point[0] + big * u[0], line.point[1] + big * u[1])
            out.append(f'<line id="{name}" x1="{_n(a[0])}" y1="{_n(a[1])}" x2="{_n(b[0])}" y2="{_n(b[1])}" '
                       f'clip-path="url(#omega-clip)"/>')
        out.append("</g>")
        out.append('<g id="inflections" fill="#333333" stroke="none">')
        m = 0.012 * max(w, h)
        for k, p in enumerate(region.inflections, start=1):
            q = back.apply_point(p)
            out.append(f'<rect id="i{k}" x="{_n(q[0] - m / 2)}" y="{_n(q[1] - m / 2)}" width="{_n(m)}" height="{_n(m)}"/>')
        out.append("</g>")
        out.append("</g>")

    out.append('<g id="paths">')
    for label, p, verdict in drawn:
        dash = f' stroke-dasharray="{d3} {d2}"' if label not in ("plan", "extended", "input") else ""
        out.append(f'<path class="path verdict-{verdict}" data-label="{label}" stroke="{_verdict_color(verdict)}"'
                   f'{dash} d="{path_data(p.segments)}"/>')
    out.append("</g>")

    out.append('<g id="endpoints" stroke="none" fill="#000000">')
    for tag, cfg in (("x", rx), ("y", ry)):
        px, py = cfg.position
        hx, hy = cfg.heading
        a = 0.04 * max(w, h)
        tip = (px + a * hx, py + a * hy)
        l = (px - 0.4 * a * hy, py + 0.4 * a * hx)
        r = (px + 0.4 * a * hy, py - 0.4 * a * hx)
        out.append(_polygon((tip, l, r), "#000000", f"endpoint-{tag}"))
    out.append("</g>")
    out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
