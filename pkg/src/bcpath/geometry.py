"""Planar primitives: oriented configurations, unit circles and the canonical frame.

Everything downstream works in the canonical frame where the curvature bound
is 1, the start configuration sits at the origin and points along +x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

EPS = 1e-9
TWO_PI = 2.0 * math.pi

Point = Tuple[float, float]


class GeometryError(ValueError):
    pass


class NoTangentCircle(GeometryError):
    pass


class Turn(Enum):
    LEFT = "L"
    RIGHT = "R"

    @property
    def sign(self) -> int:
        return 1 if self is Turn.LEFT else -1

    def opposite(self) -> "Turn":
        return Turn.RIGHT if self is Turn.LEFT else Turn.LEFT


class Side(Enum):
    """Side of the directed line through two circle centers (first -> second)."""

    ABOVE = "above"  # left of the direction
    BELOW = "below"  # right of the direction


# -- small vector helpers -------------------------------------------------

def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def scale(a: Point, k: float) -> Point:
    return (a[0] * k, a[1] * k)


def dot(a: Point, b: Point) -> float:
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Point, b: Point) -> float:
    return a[0] * b[1] - a[1] * b[0]


def norm(a: Point) -> float:
    return math.hypot(a[0], a[1])


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def midpoint(a: Point, b: Point) -> Point:
    return (0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))


def unit(a: Point) -> Point:
    n = norm(a)
    if n == 0.0:
        raise GeometryError("cannot normalize the zero vector")
    return (a[0] / n, a[1] / n)


def left_normal(v: Point) -> Point:
    return (-v[1], v[0])


def right_normal(v: Point) -> Point:
    return (v[1], -v[0])


def rotate(v: Point, angle: float) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def direction(angle: float) -> Point:
    return (math.cos(angle), math.sin(angle))


def polar_angle(v: Point) -> float:
    return math.atan2(v[1], v[0])


def wrap_angle(a: float) -> float:
    """Map an angle to (-pi, pi]."""
    a = math.fmod(a, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    elif a > math.pi:
        a -= TWO_PI
    return a


def mod2pi(a: float) -> float:
    """Map an angle to [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:
        a = 0.0
    return a


def clean(v: float) -> float:
    # drop negative zero so formatting is stable
    return v + 0.0


# -- domain types -----------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """An oriented point: position plus unit heading.

    Any non-zero heading is rescaled to unit length on construction.
    """

    position: Point
    heading: Point

    def __post_init__(self) -> None:
        px, py = (float(c) for c in self.position)
        hx, hy = (float(c) for c in self.heading)
        n = math.hypot(hx, hy)
        if not (math.isfinite(n) and math.isfinite(px) and math.isfinite(py)):
            raise GeometryError("configuration must be finite")
        if n < 1e-12:
            raise GeometryError("heading vector is zero")
        object.__setattr__(self, "position", (px, py))
        object.__setattr__(self, "heading", (hx / n, hy / n))

    @classmethod
    def from_angle(cls, x: float, y: float, angle: float) -> "Configuration":
        return cls((x, y), direction(angle))

    @property
    def angle(self) -> float:
        return polar_angle(self.heading)

    def left_center(self) -> Point:
        return add(self.position, left_normal(self.heading))

    def right_center(self) -> Point:
        return add(self.position, right_normal(self.heading))

    def reversed(self) -> "Configuration":
        return Configuration(self.position, scale(self.heading, -1.0))


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float = 1.0
    orientation: Turn = Turn.LEFT

    def __post_init__(self) -> None:
        if not self.radius > 0.0:
            raise GeometryError(f"circle radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    def point_at(self, angle: float) -> Point:
        return (self.center[0] + self.radius * math.cos(angle),
                self.center[1] + self.radius * math.sin(angle))

    def angle_of(self, p: Point) -> float:
        return polar_angle(sub(p, self.center))

    def contains(self, p: Point, strict: bool = True) -> bool:
        d = dist(p, self.center)
        if strict:
            return d < self.radius - EPS
        return d <= self.radius + EPS


def adjacent_circles(cfg: Configuration) -> Tuple[Circle, Circle]:
    """Unit circles tangent at ``cfg`` on its left and on its right."""
    return (Circle(cfg.left_center(), 1.0, Turn.LEFT),
            Circle(cfg.right_center(), 1.0, Turn.RIGHT))


def two_circle_intersection(c1: Point, r1: float, c2: Point, r2: float) -> list[Point]:
    """Intersection points of two circles, tangency reported once."""
    d = dist(c1, c2)
    if d < 1e-15:
        return []
    if d > r1 + r2 + EPS or d < abs(r1 - r2) - EPS:
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - a * a
    u = ((c2[0] - c1[0]) / d, (c2[1] - c1[1]) / d)
    base = (c1[0] + a * u[0], c1[1] + a * u[1])
    if h2 <= (EPS * max(1.0, r1)) ** 2 or abs(d - (r1 + r2)) <= EPS or abs(d - abs(r1 - r2)) <= EPS:
        return [base]
    h = math.sqrt(h2)
    n = left_normal(u)
    return [(base[0] + h * n[0], base[1] + h * n[1]),
            (base[0] - h * n[0], base[1] - h * n[1])]


def mutual_tangent_circle(c1: Circle, c2: Circle, side: Side) -> Circle:
    """Unit circle externally tangent to two unit circles.

    The center lies at distance 2 from both input centers, on the requested
    side of the directed line ``c1.center -> c2.center``.  The orientation is
    opposite to ``c1`` so that arcs on the three circles chain with C1 joints.
    """
    if abs(c1.radius - 1.0) > EPS or abs(c2.radius - 1.0) > EPS:
        raise GeometryError("mutual tangent construction expects unit circles")
    v = sub(c2.center, c1.center)
    d = norm(v)
    if d >= 4.0:
        raise NoTangentCircle(f"center distance {d:.12g} >= 4")
    if d < EPS:
        raise NoTangentCircle("coincident centers leave the tangent circle undetermined")
    u = (v[0] / d, v[1] / d)
    h = math.sqrt(max(0.0, 4.0 - 0.25 * d * d))
    n = left_normal(u) if side is Side.ABOVE else right_normal(u)
    center = (c1.center[0] + 0.5 * v[0] + h * n[0], c1.center[1] + 0.5 * v[1] + h * n[1])
    return Circle(center, 1.0, c1.orientation.opposite())


@dataclass(frozen=True)
class Similarity:
    """p -> factor * R(rotation) (p - origin)."""

    origin: Point = (0.0, 0.0)
    rotation: float = 0.0
    factor: float = 1.0

    def apply_point(self, p: Point) -> Point:
        return scale(rotate(sub(p, self.origin), self.rotation), self.factor)

    def apply_vector(self, v: Point) -> Point:
        return rotate(v, self.rotation)

    def apply_angle(self, a: float) -> float:
        return a + self.rotation

    def apply_length(self, length: float) -> float:
        return length * self.factor

    def apply_configuration(self, cfg: Configuration) -> Configuration:
        return Configuration(self.apply_point(cfg.position), self.apply_vector(cfg.heading))

    def inverse(self) -> "InverseSimilarity":
        return InverseSimilarity(self)


@dataclass(frozen=True)
class InverseSimilarity:
    forward: Similarity

    @property
    def rotation(self) -> float:
        return -self.forward.rotation

    @property
    def factor(self) -> float:
        return 1.0 / self.forward.factor

    def apply_point(self, p: Point) -> Point:
        f = self.forward
        return add(rotate(scale(p, 1.0 / f.factor), -f.rotation), f.origin)

    def apply_vector(self, v: Point) -> Point:
        return rotate(v, -self.forward.rotation)

    def apply_angle(self, a: float) -> float:
        return a - self.forward.rotation

    def apply_length(self, length: float) -> float:
        return length / self.forward.factor

    def apply_configuration(self, cfg: Configuration) -> Configuration:
        return Configuration(self.apply_point(cfg.position), self.apply_vector(cfg.heading))


@dataclass(frozen=True)
class ProblemInstance:
    """Endpoint condition in the canonical frame, with the map back to raw input."""

    x: Configuration
    y: Configuration
    scale: float = 1.0
    original_frame: Similarity = Similarity()
    raw_x: Configuration | None = None
    raw_y: Configuration | None = None

    def to_original(self):
        return self.original_frame.inverse()

    def original_point(self, p: Point) -> Point:
        return self.original_frame.inverse().apply_point(p)

    def original_configuration(self, cfg: Configuration) -> Configuration:
        return self.original_frame.inverse().apply_configuration(cfg)

    def original_length(self, length: float) -> float:
        return length / self.scale

    def canonical_length(self, length: float) -> float:
        return length * self.scale

    def reversed(self) -> "ProblemInstance":
        """Swap endpoints and flip headings (then re-canonicalize)."""
        rx = self.original_configuration(self.y).reversed()
        ry = self.original_configuration(self.x).reversed()
        return normalize_problem(rx, ry, self.scale)


def normalize_problem(raw_x: Configuration, raw_y: Configuration, kappa_max: float) -> ProblemInstance:
    """Scale by ``kappa_max`` and move ``raw_x`` to the origin heading +x."""
    if not (isinstance(kappa_max, (int, float)) and math.isfinite(kappa_max) and kappa_max > 0):
        raise GeometryError(f"kappa_max must be positive, got {kappa_max!r}")
    frame = Similarity(origin=raw_x.position, rotation=-raw_x.angle, factor=float(kappa_max))
    x = Configuration((0.0, 0.0), (1.0, 0.0))
    y = frame.apply_configuration(raw_y)
    y = Configuration((clean(y.position[0]), clean(y.position[1])), y.heading)
    return ProblemInstance(x, y, float(kappa_max), frame, raw_x, raw_y)


def canonical_instance(y: Configuration) -> ProblemInstance:
    """Instance whose start is already the canonical origin configuration."""
    return normalize_problem(Configuration((0.0, 0.0), (1.0, 0.0)), y, 1.0)
