"""Arc and line segments, parametrized by arc length."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .geometry import (
    EPS,
    TWO_PI,
    Circle,
    GeometryError,
    Point,
    Turn,
    direction,
    dist,
    mod2pi,
    polar_angle,
)


@dataclass(frozen=True)
class Line:
    start: Point
    end: Point

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", (float(self.start[0]), float(self.start[1])))
        object.__setattr__(self, "end", (float(self.end[0]), float(self.end[1])))
        if dist(self.start, self.end) <= 0.0:
            raise GeometryError("line segment must have positive length")

    kind = "line"

    @property
    def length(self) -> float:
        return dist(self.start, self.end)

    @property
    def unit_direction(self) -> Point:
        L = self.length
        return ((self.end[0] - self.start[0]) / L, (self.end[1] - self.start[1]) / L)

    @property
    def curvature(self) -> float:
        return 0.0

    @property
    def signed_sweep(self) -> float:
        return 0.0

    @property
    def start_point(self) -> Point:
        return self.start

    @property
    def end_point(self) -> Point:
        return self.end

    @property
    def start_heading(self) -> float:
        return polar_angle((self.end[0] - self.start[0], self.end[1] - self.start[1]))

    @property
    def end_heading(self) -> float:
        return self.start_heading

    def point_at(self, s: float) -> Point:
        u = self.unit_direction
        return (self.start[0] + s * u[0], self.start[1] + s * u[1])

    def heading_at(self, s: float) -> float:
        return self.start_heading

    def points(self, s: np.ndarray) -> np.ndarray:
        u = self.unit_direction
        s = np.asarray(s, dtype=float)
        return np.column_stack([self.start[0] + s * u[0], self.start[1] + s * u[1]])

    def headings(self, s: np.ndarray) -> np.ndarray:
        return np.full(np.shape(s), self.start_heading)

    def piece(self, s0: float, s1: float) -> "Line":
        return Line(self.point_at(s0), self.point_at(s1))

    def translated(self, v: Point) -> "Line":
        return Line((self.start[0] + v[0], self.start[1] + v[1]),
                    (self.end[0] + v[0], self.end[1] + v[1]))

    def reversed(self) -> "Line":
        return Line(self.end, self.start)

    def transformed(self, frame) -> "Line":
        return Line(frame.apply_point(self.start), frame.apply_point(self.end))


@dataclass(frozen=True)
class Arc:
    """Circular arc; ``start_angle`` is the polar angle of the start point
    about ``center`` and ``signed_sweep`` is positive counterclockwise."""

    center: Point
    radius: float
    start_angle: float
    signed_sweep: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if not self.radius > 0.0:
            raise GeometryError("arc radius must be positive")
        if self.signed_sweep == 0.0:
            raise GeometryError("arc sweep must be non-zero")

    kind = "arc"

    @classmethod
    def from_start(cls, start: Point, heading: float, turn: Turn, sweep: float, radius: float = 1.0) -> "Arc":
        """Arc leaving ``start`` with ``heading`` and turning ``turn`` by ``sweep`` (>0)."""
        n = direction(heading + turn.sign * math.pi / 2)
        center = (start[0] + radius * n[0], start[1] + radius * n[1])
        start_angle = polar_angle((start[0] - center[0], start[1] - center[1]))
        return cls(center, radius, start_angle, turn.sign * sweep)

    @property
    def turn(self) -> Turn:
        return Turn.LEFT if self.signed_sweep > 0 else Turn.RIGHT

    @property
    def circle(self) -> Circle:
        return Circle(self.center, self.radius, self.turn)

    @property
    def sweep(self) -> float:
        return abs(self.signed_sweep)

    @property
    def length(self) -> float:
        return self.radius * abs(self.signed_sweep)

    @property
    def curvature(self) -> float:
        return math.copysign(1.0 / self.radius, self.signed_sweep)

    @property
    def end_angle(self) -> float:
        return self.start_angle + self.signed_sweep

    def angle_at(self, s: float) -> float:
        return self.start_angle + math.copysign(s / self.radius, self.signed_sweep)

    @property
    def start_point(self) -> Point:
        return self.point_at(0.0)

    @property
    def end_point(self) -> Point:
        return self.point_at(self.length)

    @property
    def start_heading(self) -> float:
        return self.heading_at(0.0)

    @property
    def end_heading(self) -> float:
        return self.heading_at(self.length)

    def point_at(self, s: float) -> Point:
        a = self.angle_at(s)
        return (self.center[0] + self.radius * math.cos(a), self.center[1] + self.radius * math.sin(a))

    def heading_at(self, s: float) -> float:
        return self.angle_at(s) + math.copysign(math.pi / 2, self.signed_sweep)

    def points(self, s: np.ndarray) -> np.ndarray:
        a = self.start_angle + np.sign(self.signed_sweep) * np.asarray(s, dtype=float) / self.radius
        return np.column_stack([self.center[0] + self.radius * np.cos(a),
                                self.center[1] + self.radius * np.sin(a)])

    def headings(self, s: np.ndarray) -> np.ndarray:
        a = self.start_angle + np.sign(self.signed_sweep) * np.asarray(s, dtype=float) / self.radius
        return a + math.copysign(math.pi / 2, self.signed_sweep)

    def local_parameter(self, p: Point, tol: float = EPS) -> float | None:
        """Arc length at which the arc passes closest to ``p`` angularly,
        or None when the angle of ``p`` is outside the arc."""
        a = polar_angle((p[0] - self.center[0], p[1] - self.center[1]))
        u = mod2pi((a - self.start_angle) * (1 if self.signed_sweep > 0 else -1))
        span = abs(self.signed_sweep)
        atol = tol / self.radius
        if u <= span + atol:
            return min(u, span) * self.radius
        if u >= TWO_PI - atol:
            return 0.0
        return None

    def piece(self, s0: float, s1: float) -> "Arc":
        return Arc(self.center, self.radius, self.angle_at(s0),
                   math.copysign((s1 - s0) / self.radius, self.signed_sweep))

    def translated(self, v: Point) -> "Arc":
        return Arc((self.center[0] + v[0], self.center[1] + v[1]), self.radius,
                   self.start_angle, self.signed_sweep)

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.end_angle, -self.signed_sweep)

    def transformed(self, frame) -> "Arc":
        return Arc(frame.apply_point(self.center), frame.apply_length(self.radius),
                   frame.apply_angle(self.start_angle), self.signed_sweep)


Segment = Union[Arc, Line]
