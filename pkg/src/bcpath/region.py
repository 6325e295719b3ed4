"""The trapping region bounded by six unit-circle arcs.

Upper chain: left circle of x (ccw), a middle circle below the left-left
center line (cw), left circle of y (ccw).  Lower chain: the mirror image on
the right circles, with its middle circle above the right-right center line.
Both chains run from x to y; the closed boundary is the upper chain followed
by the lower chain reversed, which is clockwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import ConvexHull

from .geometry import (
    EPS,
    TWO_PI,
    Configuration,
    NoTangentCircle,
    Point,
    ProblemInstance,
    Side,
    Turn,
    adjacent_circles,
    cross,
    dist,
    midpoint,
    mod2pi,
    mutual_tangent_circle,
    norm,
    polar_angle,
    sub,
)
from .intersect import dedupe_sorted, intersect, line_circle_params, segment_line_params
from .path import CurvaturePath, diameter_of_segments
from .segments import Arc, Line, Segment


@dataclass(frozen=True)
class BoundaryArc:
    name: str  # theta1..theta4, upper, lower
    circle: str  # which construction circle carries the arc
    arc: Arc

    @property
    def sweep(self) -> float:
        return self.arc.sweep


@dataclass(frozen=True)
class DividingLine:
    point: Point
    through: Point
    replaced: bool = False

    def side(self, p: Point) -> float:
        """Signed distance, positive on the left of point -> through."""
        return cross(self.unit, sub(p, self.point))

    @property
    def unit(self) -> Point:
        d = sub(self.through, self.point)
        n = norm(d)
        return (d[0] / n, d[1] / n)


@dataclass(frozen=True)
class OmegaRegion:
    instance: ProblemInstance
    circles: Dict[str, Point]  # construction circle centers, by name
    upper: Tuple[BoundaryArc, BoundaryArc, BoundaryArc]
    lower: Tuple[BoundaryArc, BoundaryArc, BoundaryArc]
    inflections: Tuple[Point, Point, Point, Point]
    adjacent_arcs: Tuple[BoundaryArc, BoundaryArc, BoundaryArc, BoundaryArc]
    L1: DividingLine
    L2: DividingLine

    @property
    def thetas(self) -> Tuple[float, float, float, float]:
        return tuple(a.arc.length for a in self.adjacent_arcs)

    @property
    def middle_arcs(self) -> Tuple[BoundaryArc, BoundaryArc]:
        return (self.upper[1], self.lower[1])

    @property
    def middle_centers(self) -> Tuple[Point, Point]:
        return (self.upper[1].arc.center, self.lower[1].arc.center)

    @property
    def boundary(self) -> Tuple[BoundaryArc, ...]:
        """Closed clockwise chain: upper x->y, then lower y->x."""
        low = tuple(BoundaryArc(b.name, b.circle, b.arc.reversed()) for b in reversed(self.lower))
        return self.upper + low

    @property
    def boundary_segments(self) -> Tuple[Arc, ...]:
        return tuple(b.arc for b in self.boundary)

    def six_circles(self) -> List[Tuple[str, Point]]:
        return [(b.circle, b.arc.center) for b in self.upper + self.lower]

    def part_of(self, p: Point) -> str:
        x = self.instance.x.position
        y = self.instance.y.position
        # points on a dividing line belong to both closed parts; R1/R3 win
        if self.L1.side(p) * math.copysign(1.0, self.L1.side(x)) >= -EPS:
            return "R1"
        if self.L2.side(p) * math.copysign(1.0, self.L2.side(y)) >= -EPS:
            return "R3"
        return "R2"


class RegionFailure(Enum):
    NO_MIDDLE_CIRCLE = "no mutual tangent circle"
    ARC_CONDITION = "a boundary arc is not shorter than pi"
    NOT_SIMPLE = "the two chains meet away from x and y"
    ORIENTATION = "boundary is not clockwise"


def _sweep(a_from: float, a_to: float, turn: Turn) -> float:
    s = mod2pi((a_to - a_from) * turn.sign)
    return 0.0 if s > TWO_PI - EPS else s


def _chain(start: Configuration, end: Configuration, c1, cm, c3, turn: Turn):
    """Three arcs start -> tangency -> tangency -> end on circles c1, cm, c3."""
    s = turn.sign
    p1, p2 = midpoint(c1, cm), midpoint(cm, c3)
    h1 = polar_angle(sub(p1, c1)) + s * math.pi / 2
    h2 = polar_angle(sub(p2, c3)) + s * math.pi / 2
    sweeps = (_sweep(start.angle, h1, turn), _sweep(h1, h2, turn.opposite()), _sweep(h2, end.angle, turn))
    return sweeps, (p1, p2)


def _build_arcs(start: Point, centers, sweeps, turn: Turn) -> Tuple[Arc, Arc, Arc]:
    arcs = []
    p = start
    for k, (c, w) in enumerate(zip(centers, sweeps)):
        t = turn if k != 1 else turn.opposite()
        arcs.append(Arc(c, 1.0, polar_angle(sub(p, c)), t.sign * w))
        p = arcs[-1].end_point
    return tuple(arcs)


def signed_area(segs: Sequence[Segment]) -> float:
    total = 0.0
    for seg in segs:
        if isinstance(seg, Line):
            (x1, y1), (x2, y2) = seg.start, seg.end
            total += x1 * y2 - x2 * y1
        else:
            (cx, cy), r = seg.center, seg.radius
            a, b = seg.start_angle, seg.end_angle
            total += r * (cx * (math.sin(b) - math.sin(a)) - cy * (math.cos(b) - math.cos(a))) + r * r * (b - a)
    return 0.5 * total


def _order_pair(a: Tuple[Point, str], b: Tuple[Point, str]):
    key = lambda item: (round(norm(item[0]), 12), mod2pi(polar_angle(item[0])))
    return tuple(sorted((a, b), key=key))


def _tangent_points(p: Point, c: Point, r: float = 1.0) -> List[Point]:
    d = dist(p, c)
    if d <= r:
        return []
    base = polar_angle(sub(p, c))
    off = math.acos(r / d)
    return [(c[0] + r * math.cos(base + s * off), c[1] + r * math.sin(base + s * off)) for s in (1, -1)]


def _dividing_line(p: Point, q: Point, arc_p: Arc, arc_q: Arc) -> DividingLine:
    """Line through inflections p, q; swapped for a tangent when it re-enters an arc."""
    chord = Line(p, q)
    for own, other_end, arc in ((q, p, arc_q), (p, q, arc_p)):
        hits, _ = intersect(chord, arc)
        if any(dist(h[2], own) > 1e-7 for h in hits):
            for z in _tangent_points(other_end, arc.center):
                if arc.local_parameter(z, 0.0) is not None and dist(z, own) > 1e-12:
                    return DividingLine(other_end, z, True)
    return DividingLine(p, q)


def construct_region(instance: ProblemInstance) -> Optional[OmegaRegion]:
    region, _ = construct_region_verbose(instance)
    return region


def construct_region_verbose(instance: ProblemInstance) -> Tuple[Optional[OmegaRegion], Optional[RegionFailure]]:
    x, y = instance.x, instance.y
    clx, crx = adjacent_circles(x)
    cly, cry = adjacent_circles(y)
    try:
        mu = mutual_tangent_circle(clx, cly, Side.BELOW)
        md = mutual_tangent_circle(crx, cry, Side.ABOVE)
    except NoTangentCircle:
        return None, RegionFailure.NO_MIDDLE_CIRCLE
    up_sw, (ua, ub) = _chain(x, y, clx.center, mu.center, cly.center, Turn.LEFT)
    lo_sw, (la, lb) = _chain(x, y, crx.center, md.center, cry.center, Turn.RIGHT)
    if not all(EPS < w < math.pi - EPS for w in up_sw + lo_sw):
        return None, RegionFailure.ARC_CONDITION
    up = _build_arcs(x.position, (clx.center, mu.center, cly.center), up_sw, Turn.LEFT)
    lo = _build_arcs(x.position, (crx.center, md.center, cry.center), lo_sw, Turn.RIGHT)

    # chains may only touch at x (first arcs) and y (last arcs)
    for i, a in enumerate(up):
        for j, b in enumerate(lo):
            hits, overlaps = intersect(a, b)
            if overlaps:
                return None, RegionFailure.NOT_SIMPLE
            for _, _, p in hits:
                ok = (i == 0 and j == 0 and dist(p, x.position) <= 1e-7) or \
                     (i == 2 and j == 2 and dist(p, y.position) <= 1e-7)
                if not ok:
                    return None, RegionFailure.NOT_SIMPLE
    for chain in (up, lo):
        hits, overlaps = intersect(chain[0], chain[2])
        if hits or overlaps:
            return None, RegionFailure.NOT_SIMPLE
    closed = list(up) + [a.reversed() for a in reversed(lo)]
    if signed_area(closed) >= 0.0:
        return None, RegionFailure.ORIENTATION

    upper = (BoundaryArc("", "C_l(x)", up[0]), BoundaryArc("upper", "M_u", up[1]), BoundaryArc("", "C_l(y)", up[2]))
    lower = (BoundaryArc("", "C_r(x)", lo[0]), BoundaryArc("lower", "M_d", lo[1]), BoundaryArc("", "C_r(y)", lo[2]))

    # x-side and y-side inflections, each pair ordered by norm then polar angle
    xs = _order_pair((ua, "up"), (la, "lo"))
    ys = _order_pair((ub, "up"), (lb, "lo"))
    adj = {("x", "up"): up[0], ("x", "lo"): lo[0], ("y", "up"): up[2], ("y", "lo"): lo[2]}
    names = {}
    infl = []
    arcs = []
    for k, (side, (p, chain)) in enumerate([("x", xs[0]), ("x", xs[1]), ("y", ys[0]), ("y", ys[1])], start=1):
        names[(side, chain)] = f"theta{k}"
        infl.append(p)
        arcs.append(adj[(side, chain)])
    rename = lambda b, key: BoundaryArc(names[key], b.circle, b.arc)
    upper = (rename(upper[0], ("x", "up")), upper[1], rename(upper[2], ("y", "up")))
    lower = (rename(lower[0], ("x", "lo")), lower[1], rename(lower[2], ("y", "lo")))
    by_name = {b.name: b for b in upper + lower}
    adjacent = tuple(by_name[f"theta{k}"] for k in range(1, 5))

    L1 = _dividing_line(infl[0], infl[1], adjacent[0].arc, adjacent[1].arc)
    L2 = _dividing_line(infl[2], infl[3], adjacent[2].arc, adjacent[3].arc)
    circles = {"C_l(x)": clx.center, "C_r(x)": crx.center, "C_l(y)": cly.center,
               "C_r(y)": cry.center, "M_u": mu.center, "M_d": md.center}
    region = OmegaRegion(instance, circles, upper, lower, tuple(infl), adjacent, L1, L2)
    return region, None


# -- point location ------------------------------------------------------------

@dataclass(frozen=True)
class RegionLocation:
    kind: str  # Inside | Outside | OnBoundary
    part: Optional[str] = None
    arc: Optional[str] = None


def distance_to_arc(arc: Arc, p: Point) -> float:
    if arc.local_parameter(p, 0.0) is not None:
        return abs(dist(p, arc.center) - arc.radius)
    return min(dist(p, arc.start_point), dist(p, arc.end_point))


def nearest_boundary_arc(region: OmegaRegion, p: Point) -> Tuple[float, BoundaryArc]:
    return min(((distance_to_arc(b.arc, p), b) for b in region.boundary), key=lambda t: t[0])


_RAY_ANGLES = (0.3217, 1.9043, 2.7771, 4.1107, 5.5519, 0.9931, 3.3379)


def crossing_parity(region: OmegaRegion, p: Point) -> int:
    """Number of boundary crossings of a ray from ``p`` (mod 2); retries degenerate rays."""
    segs = region.boundary_segments
    for ang in _RAY_ANGLES:
        u = (math.cos(ang), math.sin(ang))
        count, degenerate = 0, False
        for arc in segs:
            roots = line_circle_params(p, u, arc.center, arc.radius, 0.0)
            if len(roots) == 1:
                degenerate = True
                break
            for t in roots:
                if t <= 0.0:
                    continue
                q = (p[0] + t * u[0], p[1] + t * u[1])
                s = arc.local_parameter(q, 0.0)
                if s is None:
                    continue
                if min(s, arc.length - s) < 1e-9:
                    degenerate = True
                    break
                count += 1
            if degenerate:
                break
        if not degenerate:
            return count % 2
    raise RuntimeError("no admissible ray direction")


def winding_number(region: OmegaRegion, p: Point) -> float:
    """Total angle swept by the boundary around ``p`` divided by 2*pi (oracle use)."""
    total = 0.0
    for arc in region.boundary_segments:
        n = max(16, int(arc.length / 1e-3))
        pts = arc.points(np.linspace(0.0, arc.length, n + 1))
        ang = np.unwrap(np.arctan2(pts[:, 1] - p[1], pts[:, 0] - p[0]))
        total += ang[-1] - ang[0]
    return total / TWO_PI


def locate_point(region: OmegaRegion, p: Point, tol: float = EPS) -> RegionLocation:
    d, b = nearest_boundary_arc(region, p)
    if d <= tol:
        return RegionLocation("OnBoundary", region.part_of(p), b.name)
    if crossing_parity(region, p):
        return RegionLocation("Inside", region.part_of(p))
    return RegionLocation("Outside")


def inside_or_on(region: OmegaRegion, p: Point) -> bool:
    return locate_point(region, p).kind != "Outside"


# -- path relation -----------------------------------------------------------------

@dataclass(frozen=True)
class Contact:
    s: float
    point: Point
    arcs: Tuple[str, ...]
    kind: str  # Tangent | Crossing | Endpoint
    part: str


@dataclass(frozen=True)
class Coincidence:
    s0: float
    s1: float
    arc: str


@dataclass(frozen=True)
class RelationReport:
    in_omega: bool
    contacts: Tuple[Contact, ...]
    coincidences: Tuple[Coincidence, ...]
    returning_points: Tuple[Contact, ...]

    @property
    def relation(self) -> str:
        return "InOmega" if self.in_omega else "NotInOmega"

    @property
    def crossings(self) -> Tuple[Contact, ...]:
        return tuple(c for c in self.contacts if c.kind == "Crossing")

    @property
    def tangents(self) -> Tuple[Contact, ...]:
        return tuple(c for c in self.contacts if c.kind == "Tangent")


def _side(region: OmegaRegion, p: Point) -> Optional[bool]:
    loc = locate_point(region, p)
    if loc.kind == "OnBoundary":
        return None
    return loc.kind == "Inside"


def _probe_side(region: OmegaRegion, path: CurvaturePath, s: float, direction: int, limit: float) -> Optional[bool]:
    delta = min(1e-4, limit)
    while True:
        side = _side(region, path.point_at(s + direction * delta))
        if side is not None or delta >= limit:
            return side
        delta = min(2.0 * delta, limit)


def _merge_runs(runs: List[Coincidence], tol: float) -> List[Coincidence]:
    out: List[Coincidence] = []
    for c in sorted(runs, key=lambda c: c.s0):
        if out and c.s0 <= out[-1].s1 + 10 * tol:
            last = out[-1]
            arc = last.arc if c.arc == last.arc else f"{last.arc}+{c.arc}"
            out[-1] = Coincidence(last.s0, max(last.s1, c.s1), arc)
        else:
            out.append(c)
    return out


def path_region_relation(region: OmegaRegion, path: CurvaturePath, tol: float = EPS) -> RelationReport:
    """Boundary contacts, coincidences and containment of a path.

    An isolated contact is a Crossing when the path is on different sides of
    the boundary just before and just after it, and a Tangent otherwise.  A
    stretch where the path runs along the boundary counts as one Crossing
    when the path is inside on one side of the stretch and outside on the
    other (a path end on the boundary counts as inside); otherwise it is
    reported as Coincident.
    """
    L = path.total_length
    hits: List[Tuple[float, Point, str]] = []
    raw_runs: List[Coincidence] = []
    for off, seg in zip(path.offsets, path.segments):
        for b in region.boundary:
            pts, overlaps = intersect(seg, b.arc, tol)
            hits.extend((off + sa, p, b.name) for sa, _, p in pts)
            for (sa0, sa1), _ in overlaps:
                if sa1 - sa0 > tol:
                    raw_runs.append(Coincidence(off + sa0, off + sa1, b.name))
    runs = _merge_runs(raw_runs, tol)
    in_run = lambda s: any(c.s0 - 10 * tol <= s <= c.s1 + 10 * tol for c in runs)

    hits.sort(key=lambda h: h[0])
    events: List[Tuple[float, Point, List[str]]] = []
    for s, p, name in hits:
        if in_run(s):
            continue
        if events and s - events[-1][0] <= 10 * tol:
            if name not in events[-1][2]:
                events[-1][2].append(name)
            continue
        events.append((s, p, [name]))

    marks = sorted({0.0, L} | {e[0] for e in events} | {c.s0 for c in runs} | {c.s1 for c in runs})
    is_end = lambda s: s <= 10 * tol or s >= L - 10 * tol

    def gap(s: float, direction: int) -> float:
        if direction < 0:
            prev = [m for m in marks if m < s - 10 * tol]
            return 0.5 * (s - (prev[-1] if prev else 0.0))
        nxt = [m for m in marks if m > s + 10 * tol]
        return 0.5 * ((nxt[0] if nxt else L) - s)

    contacts: List[Contact] = []
    for s, p, names in events:
        part = region.part_of(p)
        if is_end(s):
            contacts.append(Contact(s, p, tuple(names), "Endpoint", part))
            continue
        before = _probe_side(region, path, s, -1, gap(s, -1))
        after = _probe_side(region, path, s, 1, gap(s, 1))
        kind = "Tangent" if before == after else "Crossing"
        contacts.append(Contact(s, p, tuple(names), kind, part))

    for c in runs:
        before = True if is_end(c.s0) else _probe_side(region, path, c.s0, -1, gap(c.s0, -1))
        after = True if is_end(c.s1) else _probe_side(region, path, c.s1, 1, gap(c.s1, 1))
        ends = [s for s in (c.s0, c.s1) if not is_end(s)]
        if before != after:
            s = c.s1 if after is False else c.s0
            p = path.point_at(s)
            contacts.append(Contact(s, p, (c.arc,), "Crossing", region.part_of(p)))
        else:
            for s in ends:
                p = path.point_at(s)
                contacts.append(Contact(s, p, (c.arc,), "Coincident", region.part_of(p)))
    contacts.sort(key=lambda c: c.s)

    in_omega = True
    for a, b in zip(marks, marks[1:]):
        if b - a <= 10 * tol:
            continue
        if not inside_or_on(region, path.point_at(0.5 * (a + b))):
            in_omega = False
            break

    returning = _returning_points(region, path, contacts, marks)
    return RelationReport(in_omega, tuple(contacts), tuple(runs), returning)


def _visits(region: OmegaRegion, path: CurvaturePath, marks: Sequence[float]) -> List[Tuple[float, float, str]]:
    """Pieces of the path labelled by the part of the region they pass through."""
    cuts = set(marks)
    for line in (region.L1, region.L2):
        for off, seg in zip(path.offsets, path.segments):
            cuts.update(off + t for t in segment_line_params(seg, line.point, line.unit))
    cuts = dedupe_sorted(sorted(cuts))
    out = []
    for a, b in zip(cuts, cuts[1:]):
        p = path.point_at(0.5 * (a + b))
        if inside_or_on(region, p):
            out.append((a, b, region.part_of(p)))
    return out


def _returning_points(region: OmegaRegion, path: CurvaturePath, contacts, marks) -> Tuple[Contact, ...]:
    tangents = [c for c in contacts if c.kind == "Tangent"]
    if not tangents:
        return ()
    r2 = [(a, b) for a, b, part in _visits(region, path, marks) if part == "R2"]
    out = []
    for c in tangents:
        if c.part == "R1" and any(a < c.s for a, _ in r2):
            out.append(c)
        elif c.part == "R3" and any(b > c.s for _, b in r2):
            out.append(c)
    return tuple(out)


# -- diameter -------------------------------------------------------------------------

@dataclass(frozen=True)
class DiameterReport:
    value: float
    witness: Tuple[Point, Point]
    candidates: Dict[str, float]
    analytic: float
    sampled: float

    @property
    def disagreement(self) -> float:
        return abs(self.analytic - self.sampled)

    @property
    def consistent(self) -> bool:
        return self.disagreement <= 1e-6


def _convex_diameter(P: np.ndarray) -> Tuple[int, int]:
    """Farthest pair of a convex polygon (vertices ccw) by rotating calipers."""
    n = len(P)
    if n < 3:
        return (0, n - 1)
    xs, ys = P[:, 0].tolist(), P[:, 1].tolist()
    best, pair = -1.0, (0, 1)
    j = 1
    for i in range(n):
        ni = (i + 1) % n
        ex, ey = xs[ni] - xs[i], ys[ni] - ys[i]
        while True:
            nj = (j + 1) % n
            if ex * (ys[nj] - ys[j]) - ey * (xs[nj] - xs[j]) > 0.0:
                j = nj
            else:
                break
        for a in (i, ni):
            d = (xs[a] - xs[j]) ** 2 + (ys[a] - ys[j]) ** 2
            if d > best:
                best, pair = d, (a, j)
    return pair


def sampled_diameter(segs: Sequence[Segment], step: float = 1e-3) -> Tuple[float, Point, Point]:
    """Dense boundary sampling, convex hull, calipers, then local refinement."""
    idx, par, pts = [], [], []
    for k, seg in enumerate(segs):
        n = max(2, int(math.ceil(seg.length / step)))
        t = np.linspace(0.0, seg.length, n + 1)
        idx.append(np.full(len(t), k))
        par.append(t)
        pts.append(seg.points(t))
    idx, par, pts = np.concatenate(idx), np.concatenate(par), np.vstack(pts)
    hull = ConvexHull(pts)
    verts = hull.vertices
    a, b = _convex_diameter(pts[verts])
    ia, ib = verts[a], verts[b]
    ka, kb = int(idx[ia]), int(idx[ib])
    sa, sb = segs[ka], segs[kb]

    def neg(v):
        p, q = sa.point_at(v[0]), sb.point_at(v[1])
        return -math.hypot(p[0] - q[0], p[1] - q[1])

    res = minimize(neg, x0=[par[ia], par[ib]], method="L-BFGS-B",
                   bounds=[(0.0, sa.length), (0.0, sb.length)], options={"ftol": 1e-15, "gtol": 1e-12})
    best = -float(res.fun)
    raw = dist(tuple(pts[ia]), tuple(pts[ib]))
    if best < raw:
        return raw, tuple(pts[ia]), tuple(pts[ib])
    return best, sa.point_at(res.x[0]), sb.point_at(res.x[1])


def region_diameter(region: OmegaRegion) -> DiameterReport:
    segs = region.boundary_segments
    x, y = region.instance.x.position, region.instance.y.position
    cands = {"d(x,y)": dist(x, y)}
    mu, md = region.middle_centers
    sep = dist(mu, md)
    if sep > 1e-12:
        u = ((mu[0] - md[0]) / sep, (mu[1] - md[1]) / sep)
        z = (mu[0] + u[0], mu[1] + u[1])
        w = (md[0] - u[0], md[1] - u[1])
        if region.upper[1].arc.local_parameter(z, 1e-12) is not None and \
                region.lower[1].arc.local_parameter(w, 1e-12) is not None:
            cands["d(z,w)"] = dist(z, w)
    analytic, pa, pb = diameter_of_segments(segs)
    sampled, qa, qb = sampled_diameter(segs)
    cands["analytic"] = analytic
    cands["sampled"] = sampled
    return DiameterReport(sampled, (qa, qb), cands, analytic, sampled)
