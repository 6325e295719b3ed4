"""Bounded-curvature paths as C1 chains of arcs and line segments.

A path is valid for an endpoint condition when its joints are C1, every arc
has radius at least 1 (curvature bound normalized to 1) and it starts and
ends at the prescribed oriented points.  The detectors in this module work on
the exact arc/line representation, so nothing is sampled except where a
function says so.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import (
    EPS,
    TWO_PI,
    Configuration,
    GeometryError,
    Point,
    ProblemInstance,
    direction,
    dist,
    mod2pi,
    wrap_angle,
)
from .intersect import intersect
from .segments import Arc, Line, Segment


class JointMismatch(GeometryError):
    pass


@dataclass(frozen=True)
class CurvaturePath:
    segments: Tuple[Segment, ...]

    def __post_init__(self) -> None:
        segs = tuple(self.segments)
        if not segs:
            raise GeometryError("a path needs at least one segment")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def from_pieces(cls, pieces: Iterable[Optional[Segment]]) -> "CurvaturePath":
        return cls(tuple(p for p in pieces if p is not None))

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    @cached_property
    def offsets(self) -> Tuple[float, ...]:
        out = [0.0]
        for seg in self.segments:
            out.append(out[-1] + seg.length)
        return tuple(out)

    @property
    def total_length(self) -> float:
        return self.offsets[-1]

    @property
    def start_point(self) -> Point:
        return self.segments[0].start_point

    @property
    def end_point(self) -> Point:
        return self.segments[-1].end_point

    @property
    def start_heading(self) -> float:
        return self.segments[0].start_heading

    @property
    def end_heading(self) -> float:
        return self.segments[-1].end_heading

    @property
    def start_configuration(self) -> Configuration:
        return Configuration(self.start_point, direction(self.start_heading))

    @property
    def end_configuration(self) -> Configuration:
        return Configuration(self.end_point, direction(self.end_heading))

    def locate(self, s: float) -> Tuple[int, float]:
        """Segment index and local arc length for global arc length ``s``."""
        offs = self.offsets
        s = min(max(s, 0.0), offs[-1])
        i = int(np.searchsorted(offs, s, side="right")) - 1
        i = min(max(i, 0), len(self.segments) - 1)
        return i, min(s - offs[i], self.segments[i].length)

    def point_at(self, s: float) -> Point:
        i, t = self.locate(s)
        return self.segments[i].point_at(t)

    def heading_at(self, s: float) -> float:
        i, t = self.locate(s)
        return self.segments[i].heading_at(t)

    def sample(self, step: float) -> Tuple[np.ndarray, np.ndarray]:
        """Arc-length samples no further apart than ``step``; joints included."""
        ss, pts = [], []
        for off, seg in zip(self.offsets, self.segments):
            n = max(1, int(math.ceil(seg.length / step)))
            t = np.linspace(0.0, seg.length, n + 1)[:-1]
            ss.append(off + t)
            pts.append(seg.points(t))
        ss.append(np.array([self.total_length]))
        pts.append(np.array([self.end_point]))
        return np.concatenate(ss), np.vstack(pts)

    def sample_headings(self, s: np.ndarray) -> np.ndarray:
        out = np.empty(len(s))
        for k, v in enumerate(s):
            out[k] = self.heading_at(float(v))
        return out

    def split(self, s: float) -> Tuple[List[Segment], List[Segment]]:
        """Segments before and after arc length ``s`` (zero-length pieces dropped)."""
        i, t = self.locate(s)
        before = list(self.segments[:i])
        after = list(self.segments[i + 1:])
        seg = self.segments[i]
        if t > 1e-12:
            before.append(seg.piece(0.0, t) if t < seg.length - 1e-12 else seg)
        if t < seg.length - 1e-12:
            after.insert(0, seg.piece(t, seg.length) if t > 1e-12 else seg)
        return before, after

    def subpath_segments(self, s0: float, s1: float) -> List[Segment]:
        _, tail = self.split(s0)
        if not tail:
            return []
        rest = CurvaturePath(tuple(tail))
        head, _ = rest.split(s1 - s0)
        return head

    def translated(self, v: Point) -> "CurvaturePath":
        return CurvaturePath(tuple(seg.translated(v) for seg in self.segments))

    def reversed(self) -> "CurvaturePath":
        return CurvaturePath(tuple(seg.reversed() for seg in reversed(self.segments)))

    def transformed(self, frame) -> "CurvaturePath":
        return CurvaturePath(tuple(seg.transformed(frame) for seg in self.segments))


def canonical_path(instance: ProblemInstance, raw_path: CurvaturePath) -> CurvaturePath:
    """Map a path given in the caller's frame into the instance's canonical frame."""
    return raw_path.transformed(instance.original_frame)


def original_path(instance: ProblemInstance, path: CurvaturePath) -> CurvaturePath:
    return path.transformed(instance.original_frame.inverse())


def heading_gap(a: float, b: float) -> float:
    return abs(wrap_angle(a - b))


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str
    index: Optional[int]
    magnitude: float

    def __str__(self) -> str:
        where = "" if self.index is None else f" at {self.index}"
        return f"{self.kind}{where}: {self.magnitude:.3g}"


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {v.kind for v in self.violations}


def _direction_noise(seg: Segment) -> float:
    # a line stored by its endpoints knows its direction only to ~ulp / length
    if not isinstance(seg, Line):
        return 0.0
    scale_ = max(1.0, abs(seg.start[0]), abs(seg.start[1]), abs(seg.end[0]), abs(seg.end[1]))
    return 8.0 * math.ulp(scale_) / max(seg.length, 1e-300)


def validate_path(path: CurvaturePath, endpoints: ProblemInstance, tol: float = EPS) -> ValidationReport:
    """Check joints, the curvature bound and the endpoint condition."""
    out: List[Violation] = []
    for i, seg in enumerate(path.segments):
        if isinstance(seg, Arc) and seg.radius < 1.0 - tol:
            out.append(Violation("curvature", i, 1.0 / seg.radius))
    for i, (a, b) in enumerate(zip(path.segments, path.segments[1:])):
        gap = dist(a.end_point, b.start_point)
        if gap > tol:
            out.append(Violation("joint_position", i, gap))
        turn = heading_gap(a.end_heading, b.start_heading)
        if turn > max(tol, _direction_noise(a), _direction_noise(b)):
            out.append(Violation("joint_heading", i, turn))
    x, y = endpoints.x, endpoints.y
    first, last = path.segments[0], path.segments[-1]
    checks = [
        ("start_position", dist(path.start_point, x.position), tol),
        ("start_heading", heading_gap(path.start_heading, x.angle), max(tol, _direction_noise(first))),
        ("end_position", dist(path.end_point, y.position), tol),
        ("end_heading", heading_gap(path.end_heading, y.angle), max(tol, _direction_noise(last))),
    ]
    out.extend(Violation(kind, None, err) for kind, err, limit in checks if err > limit)
    return ValidationReport(tuple(out))


def concatenate(first: CurvaturePath, second: CurvaturePath, tol: float = EPS) -> CurvaturePath:
    gap = dist(first.end_point, second.start_point)
    turn = heading_gap(first.end_heading, second.start_heading)
    if gap > tol or turn > tol:
        raise JointMismatch(f"joint mismatch: position gap {gap:.3g}, heading gap {turn:.3g}")
    return CurvaturePath(first.segments + second.segments)


# -- turning map ----------------------------------------------------------------

@dataclass(frozen=True)
class TurningProfile:
    """Continuous lift of the heading angle, piecewise linear in arc length."""

    breakpoints: Tuple[Tuple[float, float], ...]

    @property
    def s(self) -> np.ndarray:
        return np.array([b[0] for b in self.breakpoints])

    @property
    def tau(self) -> np.ndarray:
        return np.array([b[1] for b in self.breakpoints])

    def value(self, s: float) -> float:
        return float(np.interp(s, self.s, self.tau))

    def slope(self, s: float) -> float:
        bp = self.breakpoints
        for (s0, t0), (s1, t1) in zip(bp, bp[1:]):
            if s0 <= s <= s1 and s1 > s0:
                return (t1 - t0) / (s1 - s0)
        return 0.0

    @property
    def min_value(self) -> float:
        return min(t for _, t in self.breakpoints)

    @property
    def max_value(self) -> float:
        return max(t for _, t in self.breakpoints)

    @property
    def minima(self) -> Tuple[float, ...]:
        """Arc lengths of the global minima (maximal inflections)."""
        m = self.min_value
        return tuple(s for s, t in self.breakpoints if t <= m + 1e-12)

    @property
    def maxima(self) -> Tuple[float, ...]:
        m = self.max_value
        return tuple(s for s, t in self.breakpoints if t >= m - 1e-12)


def turning_profile(path: CurvaturePath) -> TurningProfile:
    tau = wrap_angle(path.start_heading)
    pts = [(0.0, tau)]
    for off, seg in zip(path.offsets[1:], path.segments):
        tau = tau + seg.signed_sweep
        pts.append((off, tau))
    return TurningProfile(tuple(pts))


def find_parallel_tangents(path: CurvaturePath, tol: float = EPS) -> Optional[Tuple[float, float]]:
    """Smallest s1, then smallest s2 > s1, with antiparallel tangents.

    Exact on the piecewise-linear turning map: a start s1 works iff the
    heading later rises or falls by at least pi relative to tau(s1).
    """
    prof = turning_profile(path)
    s = [b[0] for b in prof.breakpoints]
    t = [b[1] for b in prof.breakpoints]
    n = len(s) - 1
    suf_max = t[:]
    suf_min = t[:]
    for k in range(n - 1, -1, -1):
        suf_max[k] = max(t[k], suf_max[k + 1])
        suf_min[k] = min(t[k], suf_min[k + 1])

    s1 = None
    for i in range(n):
        a, b = s[i], s[i + 1]
        if b <= a:
            continue
        m = (t[i + 1] - t[i]) / (b - a)
        cands = []
        # tau(s1) <= suf_max - pi  or  tau(s1) >= suf_min + pi
        for bound, below in ((suf_max[i + 1] - math.pi + tol, True), (suf_min[i + 1] + math.pi - tol, False)):
            ok_at_a = t[i] <= bound if below else t[i] >= bound
            if ok_at_a:
                cands.append(a)
            elif m != 0.0:
                x = a + (bound - t[i]) / m
                if a <= x <= b:
                    cands.append(x)
        if cands:
            s1 = min(cands)
            break
    if s1 is None:
        return None

    t1 = prof.value(s1)
    i0, _ = path.locate(s1)
    best = None
    for j in range(i0, n):
        a, b = max(s[j], s1), s[j + 1]
        if b <= a:
            continue
        m = (t[j + 1] - t[j]) / (s[j + 1] - s[j])
        ta = t[j] + m * (a - s[j])
        tb = t[j + 1]
        lo, hi = min(ta, tb) - tol, max(ta, tb) + tol
        k_lo = math.floor((lo - t1 - math.pi) / TWO_PI) - 1
        k_hi = math.ceil((hi - t1 - math.pi) / TWO_PI) + 1
        for k in range(k_lo, k_hi + 1):
            v = t1 + math.pi + k * TWO_PI
            if not (lo <= v <= hi):
                continue
            if m == 0.0:
                cand = a
            else:
                cand = min(max(a + (v - ta) / m, a), b)
            if cand > s1 + 1e-12 and (best is None or cand < best):
                best = cand
        if best is not None:
            break
    if best is None:
        return None
    return (s1, best)


# -- self intersections ---------------------------------------------------------

def self_intersections(path: CurvaturePath, tol: float = EPS) -> List[Tuple[float, float, Point]]:
    """All contacts between distinct segments except the shared joints."""
    segs = path.segments
    offs = path.offsets
    found: List[Tuple[float, float, Point]] = []
    for i, j in itertools.combinations(range(len(segs)), 2):
        hits, overlaps = intersect(segs[i], segs[j], tol)
        for sa, sb, p in hits:
            if j == i + 1 and abs(sa - segs[i].length) <= tol and sb <= tol:
                continue
            found.append((offs[i] + sa, offs[j] + sb, p))
        for (sa0, _), (sb0, _) in overlaps:
            if j == i + 1 and abs(sa0 - segs[i].length) <= tol:
                continue
            found.append((offs[i] + sa0, offs[j] + sb0, segs[i].point_at(sa0)))
    found.sort()
    out: List[Tuple[float, float, Point]] = []
    for item in found:
        if out and abs(item[0] - out[-1][0]) <= 10 * tol and abs(item[1] - out[-1][1]) <= 10 * tol:
            continue
        out.append(item)
    return out


# -- diameter ---------------------------------------------------------------------

def _farthest_on_arc(arc: Arc, q: Point) -> List[Point]:
    pts = [arc.start_point, arc.end_point]
    v = (arc.center[0] - q[0], arc.center[1] - q[1])
    n = math.hypot(*v)
    if n > 1e-15:
        f = (arc.center[0] + arc.radius * v[0] / n, arc.center[1] + arc.radius * v[1] / n)
        if arc.local_parameter(f, 0.0) is not None:
            pts.append(f)
    return pts


def _antipodal_overlap(a: Arc, b: Arc) -> Optional[float]:
    """Angle phi on ``a`` whose antipode phi+pi lies on concentric ``b``."""
    lo_a = a.start_angle if a.signed_sweep > 0 else a.end_angle
    lo_b = (b.start_angle if b.signed_sweep > 0 else b.end_angle) + math.pi
    wa, wb = a.sweep, b.sweep
    delta = mod2pi(lo_b - lo_a)
    for off in (delta - TWO_PI, delta, delta + TWO_PI):
        lo, hi = max(0.0, off), min(wa, off + wb)
        if hi >= lo:
            return lo_a + lo
    return None


def max_distance(a: Segment, b: Segment) -> Tuple[float, Point, Point]:
    """Exact maximum distance between points of two segments (critical-point enumeration)."""
    pairs: List[Tuple[Point, Point]] = []
    ends_a = [a.start_point, a.end_point]
    ends_b = [b.start_point, b.end_point]
    if isinstance(b, Arc):
        pairs += [(q, f) for q in ends_a for f in _farthest_on_arc(b, q)]
    else:
        pairs += [(q, r) for q in ends_a for r in ends_b]
    if isinstance(a, Arc):
        pairs += [(f, q) for q in ends_b for f in _farthest_on_arc(a, q)]
    if isinstance(a, Arc) and isinstance(b, Arc):
        v = (b.center[0] - a.center[0], b.center[1] - a.center[1])
        n = math.hypot(*v)
        if n > 1e-12:
            u = (v[0] / n, v[1] / n)
            pa = (a.center[0] - a.radius * u[0], a.center[1] - a.radius * u[1])
            pb = (b.center[0] + b.radius * u[0], b.center[1] + b.radius * u[1])
            if a.local_parameter(pa, 0.0) is not None and b.local_parameter(pb, 0.0) is not None:
                pairs.append((pa, pb))
        else:
            phi = _antipodal_overlap(a, b)
            if phi is not None:
                pairs.append((
                    (a.center[0] + a.radius * math.cos(phi), a.center[1] + a.radius * math.sin(phi)),
                    (b.center[0] + b.radius * math.cos(phi + math.pi), b.center[1] + b.radius * math.sin(phi + math.pi)),
                ))
    best = max(pairs, key=lambda pq: dist(*pq))
    return dist(*best), best[0], best[1]


def diameter_of_segments(segs: Sequence[Segment]) -> Tuple[float, Point, Point]:
    best = (0.0, segs[0].start_point, segs[0].start_point)
    for i in range(len(segs)):
        for j in range(i, len(segs)):
            cand = max_distance(segs[i], segs[j])
            if cand[0] > best[0]:
                best = cand
    return best


def path_diameter(path: CurvaturePath) -> float:
    """max{|p - q| : p, q on the path}, from segment extremal analysis."""
    return diameter_of_segments(path.segments)[0]


# -- long arcs ------------------------------------------------------------------------

def _same_circle(a: Segment, b: Segment, tol: float = EPS) -> bool:
    return (isinstance(a, Arc) and isinstance(b, Arc)
            and dist(a.center, b.center) <= tol and abs(a.radius - b.radius) <= tol
            and (a.signed_sweep > 0) == (b.signed_sweep > 0))


def arc_runs(path: CurvaturePath) -> List[Tuple[int, int, float]]:
    """Maximal runs of consecutive co-circular arcs as (first, last, length)."""
    runs = []
    segs = path.segments
    i = 0
    while i < len(segs):
        if not isinstance(segs[i], Arc):
            i += 1
            continue
        j = i
        length = segs[i].length
        while j + 1 < len(segs) and _same_circle(segs[j], segs[j + 1]):
            j += 1
            length += segs[j].length
        runs.append((i, j, length))
        i = j + 1
    return runs


def contains_long_arc(path: CurvaturePath, tol: float = EPS) -> Optional[int]:
    """Index of the first arc run whose length is at least pi times its radius."""
    for first, _, length in arc_runs(path):
        if length >= math.pi * path.segments[first].radius - tol:
            return first
    return None


# -- polyline import --------------------------------------------------------------------

def _circumcircle(p: Point, q: Point, r: Point) -> Optional[Tuple[Point, float]]:
    ax, ay = p
    bx, by = q
    cx, cy = r
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-14:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    return (ux, uy), math.hypot(ax - ux, ay - uy)


def _fit_line(pts: np.ndarray, tol: float) -> Optional[Line]:
    p, q = pts[0], pts[-1]
    d = q - p
    L = math.hypot(*d)
    if L == 0.0:
        return None
    dev = np.abs((pts[:, 0] - p[0]) * d[1] - (pts[:, 1] - p[1]) * d[0]) / L
    if dev.max() > tol:
        return None
    return Line(tuple(p), tuple(q))


def _fit_arc(pts: np.ndarray, tol: float) -> Optional[Arc]:
    if len(pts) < 3:
        return None
    cc = _circumcircle(tuple(pts[0]), tuple(pts[len(pts) // 2]), tuple(pts[-1]))
    if cc is None:
        return None
    c, r = cc
    if r < 1.0 - tol:
        return None
    if np.abs(np.hypot(pts[:, 0] - c[0], pts[:, 1] - c[1]) - r).max() > tol:
        return None
    ang = np.unwrap(np.arctan2(pts[:, 1] - c[1], pts[:, 0] - c[0]))
    steps = np.diff(ang)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        return None
    return Arc(c, r, float(ang[0]), float(ang[-1] - ang[0]))


def fit_polyline(points: Sequence[Point], tol: float = 1e-6) -> CurvaturePath:
    """Greedy conversion of a dense polyline into arcs (radius >= 1) and lines.

    Each piece is the longest run of samples fitting a line or a circle within
    ``tol``; joints are at shared samples, so C1 holds only to the sampling
    accuracy and the result should be passed through ``validate_path``.
    """
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        raise GeometryError("need at least two points")
    segs: List[Segment] = []
    i = 0
    n = len(pts)
    while i < n - 1:
        best_seg, best_j = Line(tuple(pts[i]), tuple(pts[i + 1])), i + 1
        for fitter in (_fit_line, _fit_arc):
            lo = i + 1
            step = 1
            while True:
                j = min(lo + step, n - 1)
                seg = fitter(pts[i:j + 1], tol)
                if seg is None:
                    break
                if j > best_j or (j == best_j and isinstance(best_seg, Line) and fitter is _fit_line):
                    best_seg, best_j = seg, j
                if j == n - 1:
                    break
                lo = j
                step *= 2
        segs.append(best_seg)
        i = best_j
    return CurvaturePath(tuple(segs))
