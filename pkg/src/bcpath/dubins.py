"""The six Dubins words, solved by tangent-line and tangent-circle geometry.

CSC words use the outer (LSL, RSR) or inner (LSR, RSL) common tangent of the
two end circles.  CCC words use the unit circle tangent to both end circles
on the side that makes the middle arc longer than pi; the other side (the
short middle arc) is the boundary of the trapping region, not a Dubins word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from .geometry import (
    EPS,
    TWO_PI,
    Configuration,
    GeometryError,
    ProblemInstance,
    Turn,
    left_normal,
    midpoint,
    mod2pi,
    polar_angle,
    right_normal,
)
from .path import CurvaturePath
from .segments import Arc, Line, Segment


class EmptyCandidates(GeometryError):
    pass


class DubinsWord(Enum):
    LSL = "LSL"
    RSR = "RSR"
    LSR = "LSR"
    RSL = "RSL"
    LRL = "LRL"
    RLR = "RLR"

    @property
    def turns(self) -> Tuple[Optional[Turn], ...]:
        return tuple(None if c == "S" else Turn(c) for c in self.value)

    @property
    def is_ccc(self) -> bool:
        return self.value[1] != "S"

    @property
    def order(self) -> int:
        return WORD_ORDER.index(self)


WORD_ORDER = (DubinsWord.LSL, DubinsWord.RSR, DubinsWord.LSR,
              DubinsWord.RSL, DubinsWord.LRL, DubinsWord.RLR)


@dataclass(frozen=True)
class Candidate:
    word: DubinsWord
    path: CurvaturePath
    # sweeps of the two end arcs and the middle parameter (segment length or sweep)
    params: Tuple[float, float, float]

    @property
    def length(self) -> float:
        return self.path.total_length


@dataclass(frozen=True)
class CandidateSet:
    candidates: Tuple[Candidate, ...]

    def __iter__(self):
        return iter(self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def __getitem__(self, i: int) -> Candidate:
        return self.candidates[i]

    @property
    def shortest(self) -> Candidate:
        return self.candidates[0]

    def by_word(self, word: DubinsWord) -> Optional[Candidate]:
        for c in self.candidates:
            if c.word is word:
                return c
        return None


def _sweep(a_from: float, a_to: float, turn: Turn) -> float:
    s = mod2pi((a_to - a_from) * turn.sign)
    # roundoff can push a zero sweep up to just below 2*pi
    return 0.0 if s > TWO_PI - EPS else s


def _center(cfg: Configuration, turn: Turn):
    return cfg.left_center() if turn is Turn.LEFT else cfg.right_center()


def _chain(x: Configuration, turns, params) -> Optional[CurvaturePath]:
    pieces: List[Segment] = []
    p, h = x.position, x.angle
    for turn, v in zip(turns, params):
        if v <= 1e-12:
            continue
        if turn is None:
            d = (math.cos(h), math.sin(h))
            q = (p[0] + v * d[0], p[1] + v * d[1])
            seg: Segment = Line(p, q)
        else:
            seg = Arc.from_start(p, h, turn, v)
        pieces.append(seg)
        # keep the intended heading: a very short line cannot carry it exactly
        p, h = seg.end_point, (h if turn is None else seg.end_heading)
    if not pieces:
        return None
    return CurvaturePath(tuple(pieces))


def _solve_csc(x: Configuration, y: Configuration, t1: Turn, t3: Turn):
    c1, c3 = _center(x, t1), _center(y, t3)
    v = (c3[0] - c1[0], c3[1] - c1[1])
    D = math.hypot(*v)
    psi = polar_angle(v)
    if t1 is t3:
        if D < 1e-12:
            # same circle: a single arc (the tangent segment collapses)
            return (_sweep(x.angle, y.angle, t1), 0.0, 0.0)
        alpha, seg = psi, D
    else:
        if D < 2.0 - 1e-12:
            return None
        ell = math.sqrt(max(0.0, D * D - 4.0))
        off = math.atan2(2.0, ell)
        alpha = psi + off if t1 is Turn.LEFT else psi - off
        seg = ell
    return (_sweep(x.angle, alpha, t1), seg, _sweep(alpha, y.angle, t3))


def _solve_ccc(x: Configuration, y: Configuration, t1: Turn):
    c1, c3 = _center(x, t1), _center(y, t1)
    v = (c3[0] - c1[0], c3[1] - c1[1])
    D = math.hypot(*v)
    if D < 1e-12 or D > 4.0 + 1e-12:
        return None
    u = (v[0] / D, v[1] / D)
    h = math.sqrt(max(0.0, 4.0 - 0.25 * D * D))
    n = left_normal(u) if t1 is Turn.LEFT else right_normal(u)
    m = midpoint(c1, c3)
    c2 = (m[0] + h * n[0], m[1] + h * n[1])
    p1, p2 = midpoint(c1, c2), midpoint(c2, c3)
    s = t1.sign
    h1 = polar_angle((p1[0] - c1[0], p1[1] - c1[1])) + s * math.pi / 2
    h2 = polar_angle((p2[0] - c3[0], p2[1] - c3[1])) + s * math.pi / 2
    return (_sweep(x.angle, h1, t1), _sweep(h1, h2, t1.opposite()), _sweep(h2, y.angle, t1))


def solve_configurations(x: Configuration, y: Configuration, word: DubinsWord) -> Optional[Candidate]:
    t1, t2, t3 = word.turns
    params = _solve_ccc(x, y, t1) if word.is_ccc else _solve_csc(x, y, t1, t3)
    if params is None:
        return None
    a, m, b = params
    if word.is_ccc and not (math.pi < m < TWO_PI):
        return None
    path = _chain(x, (t1, t2, t3), (a, m, b))
    if path is None:
        return None
    return Candidate(word, path, (a, m, b))


def solve_word(instance: ProblemInstance, word: DubinsWord) -> Optional[CurvaturePath]:
    cand = solve_configurations(instance.x, instance.y, word)
    return None if cand is None else cand.path


def candidate_set(instance: ProblemInstance) -> CandidateSet:
    cands = [c for w in WORD_ORDER if (c := solve_configurations(instance.x, instance.y, w)) is not None]
    if not cands:
        raise EmptyCandidates("no Dubins word is feasible for these endpoints")
    cands.sort(key=lambda c: (round(c.length, 9), c.word.order))
    return CandidateSet(tuple(cands))


def shortest_path(instance: ProblemInstance) -> Tuple[DubinsWord, CurvaturePath]:
    best = candidate_set(instance).shortest
    return best.word, best.path
