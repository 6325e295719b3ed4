"""Exact pairwise intersections of arc/line segments.

Results are given in each segment's local arc-length parameter.  Co-circular
arcs and collinear lines may overlap on an interval; those come back as
overlaps instead of points.
"""

from __future__ import annotations

import math
from typing import List, Tuple

from .geometry import EPS, TWO_PI, Point, cross, dist, dot, mod2pi, two_circle_intersection
from .segments import Arc, Line, Segment

Hit = Tuple[float, float, Point]
Overlap = Tuple[Tuple[float, float], Tuple[float, float]]


def _line_param(line: Line, p: Point) -> float:
    u = line.unit_direction
    return dot((p[0] - line.start[0], p[1] - line.start[1]), u)


def _clamp(s: float, L: float, tol: float) -> float | None:
    if s < -tol or s > L + tol:
        return None
    return min(max(s, 0.0), L)


def _ccw_interval(arc: Arc) -> Tuple[float, float]:
    lo = arc.start_angle if arc.signed_sweep > 0 else arc.end_angle
    return lo, abs(arc.signed_sweep)


def _arc_param_from_ccw(arc: Arc, u: float) -> float:
    w = abs(arc.signed_sweep)
    u = min(max(u, 0.0), w)
    return (u if arc.signed_sweep > 0 else w - u) * arc.radius


def line_line(a: Line, b: Line, tol: float = EPS) -> Tuple[List[Hit], List[Overlap]]:
    ua, ub = a.unit_direction, b.unit_direction
    w = (b.start[0] - a.start[0], b.start[1] - a.start[1])
    denom = cross(ua, ub)
    if abs(denom) < 1e-12:
        if abs(cross(ua, w)) > tol:
            return [], []
        t0, t1 = sorted((_line_param(a, b.start), _line_param(a, b.end)))
        lo, hi = max(t0, 0.0), min(t1, a.length)
        if hi < lo - tol:
            return [], []
        if hi - lo <= tol:
            s = 0.5 * (lo + hi)
            p = a.point_at(s)
            return [(s, min(max(_line_param(b, p), 0.0), b.length), p)], []
        pa, pb = a.point_at(lo), a.point_at(hi)
        return [], [((lo, hi), (_line_param(b, pa), _line_param(b, pb)))]
    ta = cross(w, ub) / denom
    tb = cross(w, ua) / denom
    sa, sb = _clamp(ta, a.length, tol), _clamp(tb, b.length, tol)
    if sa is None or sb is None:
        return [], []
    return [(sa, sb, a.point_at(sa))], []


def line_circle_params(start: Point, u: Point, center: Point, radius: float, tol: float = EPS) -> List[float]:
    """Parameters t where start + t*u meets the circle (u must be unit)."""
    f = (start[0] - center[0], start[1] - center[1])
    b = dot(f, u)
    h = abs(cross(u, f))
    if abs(h - radius) <= tol:
        return [-b]
    if h > radius:
        return []
    disc = math.sqrt(max(0.0, b * b - (dot(f, f) - radius * radius)))
    return [-b - disc, -b + disc]


def line_arc(a: Line, b: Arc, tol: float = EPS) -> List[Hit]:
    hits: List[Hit] = []
    for t in line_circle_params(a.start, a.unit_direction, b.center, b.radius, tol):
        sa = _clamp(t, a.length, tol)
        if sa is None:
            continue
        p = a.point_at(sa)
        sb = b.local_parameter(p, tol)
        if sb is not None:
            hits.append((sa, sb, p))
    return hits


def arc_arc(a: Arc, b: Arc, tol: float = EPS) -> Tuple[List[Hit], List[Overlap]]:
    if dist(a.center, b.center) <= tol and abs(a.radius - b.radius) <= tol:
        return _cocircular(a, b, tol)
    hits: List[Hit] = []
    for p in two_circle_intersection(a.center, a.radius, b.center, b.radius):
        sa = a.local_parameter(p, tol)
        sb = b.local_parameter(p, tol)
        if sa is not None and sb is not None:
            hits.append((sa, sb, p))
    return hits, []


def _cocircular(a: Arc, b: Arc, tol: float) -> Tuple[List[Hit], List[Overlap]]:
    lo_a, wa = _ccw_interval(a)
    lo_b, wb = _ccw_interval(b)
    delta = mod2pi(lo_b - lo_a)
    atol = tol / a.radius
    hits: List[Hit] = []
    overlaps: List[Overlap] = []
    k_max = int(max(wa, wb) // TWO_PI) + 2
    for k in range(-k_max, k_max + 1):
        off = delta + k * TWO_PI
        lo, hi = max(0.0, off), min(wa, off + wb)
        if hi < lo - atol:
            continue
        if hi - lo <= atol:
            u = 0.5 * (lo + hi)
            sa = _arc_param_from_ccw(a, u)
            sb = _arc_param_from_ccw(b, u - off)
            hits.append((sa, sb, a.point_at(sa)))
        else:
            sa0, sa1 = _arc_param_from_ccw(a, lo), _arc_param_from_ccw(a, hi)
            sb0, sb1 = _arc_param_from_ccw(b, lo - off), _arc_param_from_ccw(b, hi - off)
            if sa0 > sa1:
                sa0, sa1, sb0, sb1 = sa1, sa0, sb1, sb0
            overlaps.append(((sa0, sa1), (sb0, sb1)))
    return hits, overlaps


def intersect(a: Segment, b: Segment, tol: float = EPS) -> Tuple[List[Hit], List[Overlap]]:
    if isinstance(a, Line) and isinstance(b, Line):
        return line_line(a, b, tol)
    if isinstance(a, Line):
        return line_arc(a, b, tol), []
    if isinstance(b, Line):
        return [(sa, sb, p) for sb, sa, p in line_arc(b, a, tol)], []
    return arc_arc(a, b, tol)


def segment_line_params(seg: Segment, p: Point, u: Point, tol: float = EPS) -> List[float]:
    """Local parameters where ``seg`` meets the infinite line p + t*u (u unit)."""
    if isinstance(seg, Line):
        d = seg.unit_direction
        denom = cross(d, u)
        if abs(denom) < 1e-12:
            return []
        w = (p[0] - seg.start[0], p[1] - seg.start[1])
        s = _clamp(cross(w, u) / denom, seg.length, tol)
        return [] if s is None else [s]
    out = []
    for t in line_circle_params(p, u, seg.center, seg.radius, tol):
        q = (p[0] + t * u[0], p[1] + t * u[1])
        s = seg.local_parameter(q, tol)
        if s is not None:
            out.append(s)
    return out


def dedupe_sorted(values: List[float], tol: float = EPS) -> List[float]:
    out: List[float] = []
    for v in sorted(values):
        if not out or v - out[-1] > tol:
            out.append(v)
    return out
