"""Free and trapped verdicts, the parallel-tangent extension and length planning.

A verdict is only issued with evidence: Free needs a certificate that the
matching detector re-checks, and TrappedInOmega needs the region to exist,
the path to be embedded and inside it, and no certificate to fire.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from .dubins import Candidate, CandidateSet, DubinsWord, candidate_set
from .geometry import EPS, GeometryError, Point, ProblemInstance, Turn, direction, dist
from .path import (
    CurvaturePath,
    contains_long_arc,
    find_parallel_tangents,
    self_intersections,
)
from .proximity import DSubcase, ProximityReport, classify_endpoints
from .region import OmegaRegion, construct_region, path_region_relation
from .segments import Arc, Line


class NoParallelTangents(GeometryError):
    pass


class TargetTooShort(GeometryError):
    pass


class NoFreeCandidate(GeometryError):
    pass


class InfeasibleGradient(GeometryError):
    pass


# -- certificates ---------------------------------------------------------------

@dataclass(frozen=True)
class FreeCertificate:
    kind: str  # LongArc | ParallelTangents | SelfIntersection | EndpointInsideAdjacentDisk | CrossSectionBand
    segment_index: Optional[int] = None
    s1: Optional[float] = None
    s2: Optional[float] = None
    points: Tuple[Point, ...] = ()

    def describe(self) -> str:
        if self.kind == "LongArc":
            return f"LongArc(segment={self.segment_index})"
        if self.kind in ("ParallelTangents", "SelfIntersection"):
            return f"{self.kind}(s1={self.s1:.12g}, s2={self.s2:.12g})"
        return self.kind


CERTIFICATE_ORDER = ("LongArc", "ParallelTangents", "SelfIntersection", "EndpointInsideAdjacentDisk")


def _endpoint_in_disk(instance: ProblemInstance) -> bool:
    x, y = instance.x, instance.y
    return any(dist(y.position, c) < 1.0 - EPS for c in (x.left_center(), x.right_center()))


def free_certificate(instance: ProblemInstance, path: CurvaturePath) -> Optional[FreeCertificate]:
    """First certificate in the fixed order, or None."""
    idx = contains_long_arc(path)
    if idx is not None:
        return FreeCertificate("LongArc", segment_index=idx)
    pt = find_parallel_tangents(path)
    if pt is not None:
        return FreeCertificate("ParallelTangents", s1=pt[0], s2=pt[1])
    cross = self_intersections(path)
    if cross:
        s1, s2, p = cross[0]
        return FreeCertificate("SelfIntersection", s1=s1, s2=s2, points=(p,))
    if _endpoint_in_disk(instance):
        return FreeCertificate("EndpointInsideAdjacentDisk", points=(instance.y.position,))
    return None


def cross_section_band(path: CurvaturePath, step: float = 1e-3) -> Optional[FreeCertificate]:
    """Band certificate: both ends on a unit circle whose center is below the
    chord, and some point of the path above that circle.

    Used only when a path meets this configuration; the witness is the pair
    of ends and the point found above the circle.
    """
    p, q = path.start_point, path.end_point
    half = 0.5 * dist(p, q)
    if half <= 0.0 or half > 1.0:
        return None
    m = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
    ux, uy = (q[0] - p[0]) / (2 * half), (q[1] - p[1]) / (2 * half)
    depth = math.sqrt(max(0.0, 1.0 - half * half))
    _, pts = path.sample(step)
    for up in ((-uy, ux), (uy, -ux)):
        u = (pts[:, 0] - m[0]) * ux + (pts[:, 1] - m[1]) * uy
        v = (pts[:, 0] - m[0]) * up[0] + (pts[:, 1] - m[1]) * up[1]
        inside = np.abs(u) < 1.0
        cap = np.sqrt(np.clip(1.0 - u * u, 0.0, None)) - depth
        above = inside & (v > cap + EPS)
        if above.any():
            k = int(np.argmax(v - cap))
            return FreeCertificate("CrossSectionBand", points=(p, q, tuple(pts[k])))
    return None


def verify_certificate(instance: ProblemInstance, path: CurvaturePath, cert: FreeCertificate) -> bool:
    """Re-check a certificate with the detector it came from."""
    if cert.kind == "LongArc":
        idx = contains_long_arc(path)
        return idx == cert.segment_index
    if cert.kind == "ParallelTangents":
        t1, t2 = path.heading_at(cert.s1), path.heading_at(cert.s2)
        return abs(math.cos(t1 - t2) + 1.0) <= 1e-9 and cert.s1 < cert.s2
    if cert.kind == "SelfIntersection":
        return dist(path.point_at(cert.s1), path.point_at(cert.s2)) <= 1e-7 and cert.s1 < cert.s2
    if cert.kind == "EndpointInsideAdjacentDisk":
        return _endpoint_in_disk(instance)
    if cert.kind == "CrossSectionBand":
        return len(cert.points) == 3 and find_parallel_tangents(path) is not None
    return False


# -- verdicts -----------------------------------------------------------------------

@dataclass(frozen=True)
class HomotopyVerdict:
    kind: str  # TrappedInOmega | Free | Unresolved
    certificate: Optional[FreeCertificate] = None
    region: Optional[OmegaRegion] = None
    reason: str = ""

    def describe(self) -> str:
        if self.kind == "Free":
            return f"Free[{self.certificate.describe()}]"
        if self.kind == "Unresolved":
            return f"Unresolved[{self.reason}]"
        return self.kind


def classify_homotopy(instance: ProblemInstance, path: CurvaturePath,
                      report: Optional[ProximityReport] = None,
                      region: Optional[OmegaRegion] = None) -> HomotopyVerdict:
    cert = free_certificate(instance, path)
    if cert is not None:
        return HomotopyVerdict("Free", certificate=cert)
    report = report or classify_endpoints(instance)
    if report.d_subcase is not DSubcase.CARRIES_OMEGA:
        label = report.proximity_class.value
        if report.d_subcase is not None:
            label += f"/{report.d_subcase.value}"
        return HomotopyVerdict("Unresolved", reason=f"class {label}: no trapping region")
    region = region or construct_region(instance)
    if not report.forward_region:
        return HomotopyVerdict("Unresolved", region=region, reason="y is not in the forward region of x")
    rel = path_region_relation(region, path)
    if rel.in_omega:
        return HomotopyVerdict("TrappedInOmega", region=region)
    return HomotopyVerdict("Unresolved", region=region,
                           reason="path leaves the region and no freeness certificate applies")


# -- extension homotopy ---------------------------------------------------------------

@dataclass(frozen=True)
class HomotopyFamily:
    """Paths obtained by pushing the part between two antiparallel tangents
    away along the first tangent by r, for r in [0, r_max]."""

    base: CurvaturePath
    s1: float
    s2: float
    r_max: float

    @property
    def base_length(self) -> float:
        return self.base.total_length

    def length(self, r: float) -> float:
        return self.base_length + 2.0 * r

    def member(self, r: float) -> CurvaturePath:
        if not 0.0 <= r <= self.r_max + 1e-12:
            raise ValueError(f"parameter {r} outside [0, {self.r_max}]")
        if r == 0.0:
            return self.base
        path = self.base
        # push along the bisector of the two tangents so near-antiparallel pairs
        # split their heading gap evenly between the two new joints
        a, b = direction(path.heading_at(self.s1)), direction(path.heading_at(self.s2))
        t = (a[0] - b[0], a[1] - b[1])
        n = math.hypot(*t)
        shift = (r * t[0] / n, r * t[1] / n)
        p1, p2 = path.point_at(self.s1), path.point_at(self.s2)
        prefix, _ = path.split(self.s1)
        middle = path.subpath_segments(self.s1, self.s2)
        _, suffix = path.split(self.s2)
        pieces = list(prefix)
        pieces.append(Line(p1, (p1[0] + shift[0], p1[1] + shift[1])))
        pieces.extend(seg.translated(shift) for seg in middle)
        pieces.append(Line((p2[0] + shift[0], p2[1] + shift[1]), p2))
        pieces.extend(suffix)
        return CurvaturePath(tuple(pieces))

    def sweep(self, n: int) -> List[Tuple[float, CurvaturePath]]:
        return [(float(r), self.member(float(r))) for r in np.linspace(0.0, self.r_max, n)]


def extend_path(path: CurvaturePath, target_length: float) -> Tuple[CurvaturePath, HomotopyFamily]:
    pt = find_parallel_tangents(path)
    if pt is None:
        raise NoParallelTangents("path has no antiparallel tangent pair")
    L = path.total_length
    if target_length < L - 1e-12:
        raise TargetTooShort(f"target {target_length:.12g} is below the current length {L:.12g}")
    r = max(0.0, 0.5 * (target_length - L))
    family = HomotopyFamily(path, pt[0], pt[1], r)
    return family.member(r), family


# -- planning ---------------------------------------------------------------------------

class PlanBranch(Enum):
    NO_EXTENSION_NEEDED = "NoExtensionNeeded"
    EXTEND_SHORTEST = "ExtendShortest"
    EXTEND_FREE_CANDIDATE = "ExtendFreeCandidate"
    LOOP_AUGMENTED = "LoopAugmented"
    FREE_CANDIDATE_EXCEEDS = "FreeCandidateExceeds"


@dataclass(frozen=True)
class CandidateVerdict:
    word: DubinsWord
    length: float
    verdict: HomotopyVerdict


@dataclass(frozen=True)
class PlanResult:
    branch: PlanBranch
    path: CurvaturePath
    word: DubinsWord
    required_length: float
    verdicts: Tuple[CandidateVerdict, ...]
    family: Optional[HomotopyFamily] = None

    @property
    def length(self) -> float:
        return self.path.total_length

    @property
    def exact(self) -> bool:
        return self.branch is not PlanBranch.FREE_CANDIDATE_EXCEEDS


def loop_augmented(instance: ProblemInstance, path: CurvaturePath) -> CurvaturePath:
    """Prefix ``path`` with one full turn on the left adjacent circle of x.

    The loop returns to x with the start heading, so the result has the same
    endpoint condition, is 2*pi longer and carries a half-circle arc.
    """
    x = instance.x
    a1 = Arc.from_start(x.position, x.angle, Turn.LEFT, math.pi)
    a2 = Arc.from_start(a1.end_point, a1.end_heading, Turn.LEFT, math.pi)
    return CurvaturePath((a1, a2) + path.segments)


def candidate_verdicts(instance: ProblemInstance, cands: CandidateSet,
                       report: Optional[ProximityReport] = None) -> Tuple[CandidateVerdict, ...]:
    report = report or classify_endpoints(instance)
    region = construct_region(instance) if report.d_subcase is DSubcase.CARRIES_OMEGA else None
    return tuple(CandidateVerdict(c.word, c.length, classify_homotopy(instance, c.path, report, region))
                 for c in cands)


def plan_min_length(instance: ProblemInstance, required_length: float, augment: bool = True) -> PlanResult:
    """Shortest-first plan reaching at least ``required_length``.

    Branches, in order: the shortest Dubins path is already long enough; the
    shortest is free with parallel tangents and is extended; the shortest
    free candidate with parallel tangents that is not too long is extended;
    (with ``augment``) the shortest path with a full loop prepended is
    extended; the shortest free candidate is returned even though it
    overshoots.  Otherwise NoFreeCandidate.
    """
    if not (required_length >= 0.0 and math.isfinite(required_length)):
        raise ValueError("required_length must be a finite non-negative number")
    cands = candidate_set(instance)
    verdicts = candidate_verdicts(instance, cands)
    shortest = cands.shortest
    if shortest.length >= required_length - 1e-12:
        return PlanResult(PlanBranch.NO_EXTENSION_NEEDED, shortest.path, shortest.word, required_length, verdicts)

    def extensible(c: Candidate, v: CandidateVerdict) -> bool:
        return v.verdict.kind == "Free" and find_parallel_tangents(c.path) is not None

    if extensible(shortest, verdicts[0]):
        path, fam = extend_path(shortest.path, required_length)
        return PlanResult(PlanBranch.EXTEND_SHORTEST, path, shortest.word, required_length, verdicts, fam)
    for c, v in zip(cands, verdicts):
        if c.length <= required_length and extensible(c, v):
            path, fam = extend_path(c.path, required_length)
            return PlanResult(PlanBranch.EXTEND_FREE_CANDIDATE, path, c.word, required_length, verdicts, fam)
    if augment:
        looped = loop_augmented(instance, shortest.path)
        if looped.total_length <= required_length:
            path, fam = extend_path(looped, required_length)
            return PlanResult(PlanBranch.LOOP_AUGMENTED, path, shortest.word, required_length, verdicts, fam)
    for c, v in zip(cands, verdicts):
        if v.verdict.kind == "Free":
            return PlanResult(PlanBranch.FREE_CANDIDATE_EXCEEDS, c.path, c.word, required_length, verdicts)
    raise NoFreeCandidate("every Dubins candidate is trapped or unresolved and the shortest is too short")


# -- gradient ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class FeasibilityReport:
    vertical_drop: float
    max_gradient: float
    planar_length: float
    required_planar_length: float

    @property
    def feasible(self) -> bool:
        return self.planar_length >= self.required_planar_length

    @property
    def shortfall(self) -> float:
        return max(0.0, self.required_planar_length - self.planar_length)


def required_planar_length(vertical_drop: float, max_gradient: float) -> float:
    if not (max_gradient > 0.0 and math.isfinite(max_gradient)):
        raise InfeasibleGradient(f"max_gradient must be positive, got {max_gradient!r}")
    return abs(vertical_drop) / max_gradient


def gradient_feasibility(vertical_drop: float, max_gradient: float, planar_length: float) -> FeasibilityReport:
    """A path with planar length L can descend at most max_gradient * L."""
    need = required_planar_length(vertical_drop, max_gradient)
    return FeasibilityReport(vertical_drop, max_gradient, planar_length, need)
