"""Proximity conditions on the adjacent-circle centers and the A/B/C/D classes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .geometry import EPS, ProblemInstance, Turn, dist, midpoint, mod2pi, polar_angle, sub
from .path import CurvaturePath
from .region import construct_region
from .segments import Arc

LIMIT = 4.0


class RawCondition(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


class ProximityClass(Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


class DSubcase(Enum):
    CARRIES_OMEGA = "CarriesOmega"
    SINGLE_ARC = "SingleArc"
    DOUBLE_ARC = "DoubleArc"


@dataclass(frozen=True)
class ProximityReport:
    d_ll: float
    d_rr: float
    raw: RawCondition
    proximity_class: ProximityClass
    d_subcase: Optional[DSubcase]
    forward_region: bool
    y_inside_adjacent_disk: bool
    witness: Optional[CurvaturePath] = None  # the single or double arc path, when found


def _at_least(d: float) -> bool:
    # values within EPS of the threshold count as reaching it
    return d >= LIMIT - EPS


def raw_proximity(instance: ProblemInstance) -> Tuple[float, float, RawCondition]:
    x, y = instance.x, instance.y
    d_ll = dist(x.left_center(), y.left_center())
    d_rr = dist(x.right_center(), y.right_center())
    far_l, far_r = _at_least(d_ll), _at_least(d_rr)
    if far_l and far_r:
        raw = RawCondition.I
    elif far_r:
        raw = RawCondition.II
    elif far_l:
        raw = RawCondition.III
    else:
        raw = RawCondition.IV
        assert dist(x.position, y.position) < LIMIT, "condition (iv) forces d(x, y) < 4"
    return d_ll, d_rr, raw


def _short(sweep: float) -> bool:
    return EPS < sweep < math.pi - EPS


def _sweep(a_from: float, a_to: float, turn: Turn) -> float:
    return mod2pi((a_to - a_from) * turn.sign)


def single_arc_path(instance: ProblemInstance) -> Optional[CurvaturePath]:
    """A unit arc from x to y shorter than pi, if the adjacent circles coincide."""
    x, y = instance.x, instance.y
    for turn, cx, cy in ((Turn.LEFT, x.left_center(), y.left_center()),
                         (Turn.RIGHT, x.right_center(), y.right_center())):
        if dist(cx, cy) > EPS:
            continue
        w = _sweep(x.angle, y.angle, turn)
        if _short(w):
            return CurvaturePath((Arc.from_start(x.position, x.angle, turn, w),))
    return None


def double_arc_path(instance: ProblemInstance) -> Optional[CurvaturePath]:
    """Two oppositely oriented unit arcs, each shorter than pi, joined at a tangency."""
    x, y = instance.x, instance.y
    for t1, c1, c2 in ((Turn.LEFT, x.left_center(), y.right_center()),
                       (Turn.RIGHT, x.right_center(), y.left_center())):
        if abs(dist(c1, c2) - 2.0) > EPS:
            continue
        p = midpoint(c1, c2)
        h = polar_angle(sub(p, c1)) + t1.sign * math.pi / 2
        w1 = _sweep(x.angle, h, t1)
        w2 = _sweep(h, y.angle, t1.opposite())
        if _short(w1) and _short(w2):
            a1 = Arc.from_start(x.position, x.angle, t1, w1)
            a2 = Arc.from_start(a1.end_point, a1.end_heading, t1.opposite(), w2)
            return CurvaturePath((a1, a2))
    return None


def in_forward_region(instance: ProblemInstance) -> bool:
    x, y = instance.x, instance.y
    p = y.position
    outside = dist(p, x.left_center()) > 1.0 + EPS and dist(p, x.right_center()) > 1.0 + EPS
    return outside and p[0] > 0.0


def inside_adjacent_disk(instance: ProblemInstance) -> bool:
    x, y = instance.x, instance.y
    return any(dist(y.position, c) < 1.0 - EPS for c in (x.left_center(), x.right_center()))


def classify_endpoints(instance: ProblemInstance) -> ProximityReport:
    d_ll, d_rr, raw = raw_proximity(instance)
    forward = in_forward_region(instance)
    inside = inside_adjacent_disk(instance)
    sub_case = None
    witness = None
    if raw is RawCondition.I:
        cls = ProximityClass.A
    elif raw in (RawCondition.II, RawCondition.III):
        cls = ProximityClass.B
    else:
        cls = ProximityClass.D
        if (witness := single_arc_path(instance)) is not None:
            sub_case = DSubcase.SINGLE_ARC
        elif (witness := double_arc_path(instance)) is not None:
            sub_case = DSubcase.DOUBLE_ARC
        elif construct_region(instance) is not None:
            sub_case = DSubcase.CARRIES_OMEGA
        else:
            cls = ProximityClass.C
    return ProximityReport(d_ll, d_rr, raw, cls, sub_case, forward, inside, witness)
