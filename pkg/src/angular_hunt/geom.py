"""Plane primitives: points, lines, half-planes, angular hints and rectangles.

All predicates use one global tolerance ``EPS`` (overridable through the
``ANGULAR_HUNT_EPS`` environment variable). Coordinates are plain doubles;
they are kept below ``MAX_COORD`` in magnitude so that the tolerance stays
meaningful.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import AmbiguousAtVertex, InvalidGeometry

EPS = float(os.environ.get("ANGULAR_HUNT_EPS", "1e-9"))
MAX_COORD = 2.0**40
TAU = 2.0 * math.pi


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def __mul__(self, k):  # type: ignore[override]
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self):
        return Point(-self.x, -self.y)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other) -> float:
        return self.x * other[1] - self.y * other[0]

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self) -> "Point":
        n = math.hypot(self.x, self.y)
        if n == 0.0:
            raise InvalidGeometry("zero vector has no direction")
        return Point(self.x / n, self.y / n)

    def angle(self) -> float:
        """Direction angle in [0, 2pi)."""
        a = math.atan2(self.y, self.x)
        return a + TAU if a < 0.0 else a


ORIGIN = Point(0.0, 0.0)


def check_point(p) -> Point:
    """Validate finiteness and magnitude; return ``p`` as a Point."""
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidGeometry(f"non-finite point {p!r}")
    if abs(x) > MAX_COORD or abs(y) > MAX_COORD:
        raise InvalidGeometry(f"point {p!r} exceeds coordinate cap 2^40")
    return Point(x, y)


def dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def direction(theta: float) -> Point:
    return Point(math.cos(theta), math.sin(theta))


def wrap_angle(a: float) -> float:
    """Reduce an angle to [0, 2pi)."""
    a = math.fmod(a, TAU)
    if a < 0.0:
        a += TAU
    if a >= TAU:
        a = 0.0
    return a


def dist_point_segment(p, a, b) -> float:
    """Euclidean distance from ``p`` to the closed segment [ab]."""
    p, a, b = check_point(p), check_point(a), check_point(b)
    ab = b - a
    l2 = ab.dot(ab)
    if l2 == 0.0:
        return dist(p, a)
    t = min(1.0, max(0.0, (p - a).dot(ab) / l2))
    return dist(p, a + ab * t)


# ---------------------------------------------------------------- lines


@dataclass(frozen=True)
class Line:
    """Unoriented line in canonical form.

    ``angle`` is the direction angle in [0, pi); ``anchor`` is the foot of the
    perpendicular dropped from the origin.
    """

    anchor: Point
    angle: float

    @staticmethod
    def make(point, theta: float) -> "Line":
        point = check_point(point)
        theta = math.fmod(theta, math.pi)
        if theta < 0.0:
            theta += math.pi
        if theta >= math.pi:
            theta = 0.0
        d = direction(theta)
        foot = point - d * point.dot(d)
        return Line(foot, theta)

    @staticmethod
    def through(a, b) -> "Line":
        a, b = check_point(a), check_point(b)
        if dist(a, b) <= EPS:
            raise InvalidGeometry("line through coincident points")
        return Line.make(a, (b - a).angle())

    @property
    def direction(self) -> Point:
        return direction(self.angle)

    @property
    def normal(self) -> Point:
        """Unit normal, direction rotated a quarter turn counterclockwise."""
        d = self.direction
        return Point(-d.y, d.x)

    def canonical(self) -> "Line":
        return Line.make(self.anchor, self.angle)

    def is_horizontal(self) -> bool:
        return self.angle <= EPS or self.angle >= math.pi - EPS

    def is_vertical(self) -> bool:
        return abs(self.angle - math.pi / 2) <= EPS

    def signed_distance(self, p) -> float:
        return (Point(p[0], p[1]) - self.anchor).dot(self.normal)

    def same_as(self, other: "Line", tol: float = EPS) -> bool:
        da = abs(self.angle - other.angle)
        da = min(da, math.pi - da)
        return da <= tol and dist(self.anchor, other.anchor) <= tol * max(1.0, self.anchor.norm())


def project_point_line(p, line: Line) -> Point:
    """Orthogonal projection of ``p`` onto ``line``."""
    p = check_point(p)
    d = line.direction
    return line.anchor + d * (p - line.anchor).dot(d)


class _Parallel:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "PARALLEL"


PARALLEL = _Parallel()


def line_intersection(l1: Line, l2: Line):
    """Intersection point of two lines, or ``PARALLEL`` (coincident lines included)."""
    da = abs(l1.angle - l2.angle)
    if min(da, math.pi - da) <= EPS:
        return PARALLEL
    d1, d2 = l1.direction, l2.direction
    denom = d1.cross(d2)
    t = (l2.anchor - l1.anchor).cross(d2) / denom
    return l1.anchor + d1 * t


# ---------------------------------------------------------------- half-planes

SIDES = ("right", "left", "up", "down")


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane coded as ``(boundary, side)``.

    ``side`` is up/down exactly when the boundary is horizontal and
    right/left otherwise.
    """

    boundary: Line
    side: str

    def __post_init__(self):
        if self.side not in SIDES:
            raise InvalidGeometry(f"unknown side {self.side!r}")
        horizontal = self.boundary.is_horizontal()
        if horizontal != (self.side in ("up", "down")):
            raise InvalidGeometry(f"side {self.side!r} inconsistent with boundary angle {self.boundary.angle}")

    @staticmethod
    def from_normal(point, normal) -> "HalfPlane":
        """Half-plane {q : (q - point) . normal >= 0}, with its side coded."""
        n = Point(normal[0], normal[1]).unit()
        line = Line.make(point, n.angle() + math.pi / 2)
        if line.is_horizontal():
            side = "up" if n.y > 0 else "down"
        else:
            side = "right" if n.x > 0 else "left"
        return HalfPlane(line, side)

    @property
    def normal(self) -> Point:
        """Unit normal pointing into the half-plane."""
        n = self.boundary.normal
        if self.side == "up":
            return n if n.y > 0 else -n
        if self.side == "down":
            return n if n.y < 0 else -n
        if self.side == "right":
            return n if n.x > 0 else -n
        return n if n.x < 0 else -n

    def signed_distance(self, p) -> float:
        return (Point(p[0], p[1]) - self.boundary.anchor).dot(self.normal)

    def contains(self, p, tol: float = EPS) -> bool:
        return self.signed_distance(p) >= -tol

    def complement(self) -> "HalfPlane":
        flip = {"right": "left", "left": "right", "up": "down", "down": "up"}
        return HalfPlane(self.boundary, flip[self.side])

    def as_hint(self, vertex) -> "AngularHint":
        vertex = check_point(vertex)
        if abs(self.boundary.signed_distance(vertex)) > EPS * max(1.0, vertex.norm()):
            raise InvalidGeometry("hint vertex is not on the half-plane boundary")
        return AngularHint(vertex, wrap_angle(self.normal.angle() + math.pi / 2), math.pi)


def halfplane_contains(h: HalfPlane, p) -> bool:
    return h.contains(check_point(p))


# ---------------------------------------------------------------- angular hints


@dataclass(frozen=True)
class AngularHint:
    """Closed angle swept clockwise from ray ``p1`` (angle ``start``) by ``sweep``."""

    vertex: Point
    start: float
    sweep: float

    def __post_init__(self):
        if not (0.0 < self.sweep < TAU):
            raise InvalidGeometry(f"hint sweep {self.sweep} not in (0, 2pi)")

    @staticmethod
    def from_rays(vertex, p1, p2) -> "AngularHint":
        a1 = Point(*p1).angle()
        a2 = Point(*p2).angle()
        sweep = wrap_angle(a1 - a2)
        return AngularHint(check_point(vertex), a1, sweep)

    @property
    def p1_angle(self) -> float:
        return self.start

    @property
    def p2_angle(self) -> float:
        return wrap_angle(self.start - self.sweep)

    @property
    def p1(self) -> Point:
        return direction(self.p1_angle)

    @property
    def p2(self) -> Point:
        return direction(self.p2_angle)

    def complement(self) -> "AngularHint":
        return AngularHint(self.vertex, self.p2_angle, TAU - self.sweep)

    def on_boundary(self, p, tol: float = EPS) -> bool:
        return (
            dist_point_segment(p, self.vertex, self.vertex + self.p1 * (dist(p, self.vertex) + 1.0)) <= tol
            or dist_point_segment(p, self.vertex, self.vertex + self.p2 * (dist(p, self.vertex) + 1.0)) <= tol
        )

    def contains(self, p, tol: float = EPS) -> bool:
        p = check_point(p)
        if dist(p, self.vertex) <= tol:
            raise AmbiguousAtVertex("point coincides with hint vertex")
        offset = wrap_angle(self.start - (p - self.vertex).angle())
        if offset <= self.sweep:
            return True
        return self.on_boundary(p, tol)

    def contains_or_vertex(self, p, tol: float = EPS) -> bool:
        """Membership with the vertex itself counted as contained."""
        try:
            return self.contains(p, tol)
        except AmbiguousAtVertex:
            return True

    def is_halfplane(self, tol: float = EPS) -> bool:
        return abs(self.sweep - math.pi) <= tol

    def as_halfplane(self) -> HalfPlane:
        if not self.is_halfplane():
            raise InvalidGeometry(f"hint of size {self.sweep} is not a half-plane")
        return HalfPlane.from_normal(self.vertex, direction(self.start - math.pi / 2))


def angle_contains(hint: AngularHint, p) -> bool:
    return hint.contains(p)


# ---------------------------------------------------------------- isometries


def rotate_about(p, center, quarter_turns: int) -> Point:
    """Rotate ``p`` counterclockwise about ``center`` by quarter turns."""
    if quarter_turns not in (0, 1, 2, 3):
        raise InvalidGeometry("quarter_turns must be in {0,1,2,3}")
    dx, dy = p[0] - center[0], p[1] - center[1]
    for _ in range(quarter_turns):
        dx, dy = -dy, dx
    return Point(center[0] + dx, center[1] + dy)


def reflect_vertical(p, axis_x: float) -> Point:
    return Point(2.0 * axis_x - p[0], p[1])


# ---------------------------------------------------------------- rectangles


@dataclass(frozen=True)
class StraightRect:
    """Axis-aligned closed rectangle."""

    west: float
    east: float
    south: float
    north: float

    def __post_init__(self):
        vals = (self.west, self.east, self.south, self.north)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidGeometry("non-finite rectangle")
        if not (self.west < self.east and self.south < self.north):
            raise InvalidGeometry(f"degenerate rectangle {vals}")

    @staticmethod
    def square(center, side: float) -> "StraightRect":
        h = side / 2.0
        return StraightRect(center[0] - h, center[0] + h, center[1] - h, center[1] + h)

    @staticmethod
    def from_corners(p, q) -> "StraightRect":
        return StraightRect(min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))

    @property
    def width(self) -> float:
        return self.east - self.west

    @property
    def height(self) -> float:
        return self.north - self.south

    @property
    def center(self) -> Point:
        return Point((self.west + self.east) / 2.0, (self.south + self.north) / 2.0)

    @property
    def perimeter(self) -> float:
        return 2.0 * (self.width + self.height)

    @property
    def min_side(self) -> float:
        return min(self.width, self.height)

    # corners clockwise from the north-west one
    @property
    def A(self) -> Point:
        return Point(self.west, self.north)

    @property
    def B(self) -> Point:
        return Point(self.east, self.north)

    @property
    def C(self) -> Point:
        return Point(self.east, self.south)

    @property
    def D(self) -> Point:
        return Point(self.west, self.south)

    def corners(self) -> tuple:
        return (self.A, self.B, self.C, self.D)

    def contains(self, p, tol: float = EPS) -> bool:
        return (
            self.west - tol <= p[0] <= self.east + tol
            and self.south - tol <= p[1] <= self.north + tol
        )

    def contains_rect(self, other: "StraightRect", tol: float = EPS) -> bool:
        return (
            other.west >= self.west - tol
            and other.east <= self.east + tol
            and other.south >= self.south - tol
            and other.north <= self.north + tol
        )

    def as_rect(self) -> "Rect":
        return Rect(self.center, self.width / 2.0, self.height / 2.0, 0.0)


@dataclass(frozen=True)
class Rect:
    """Closed rectangle in general position.

    ``half_u`` extends along the unit axis at ``angle``; ``half_v`` along the
    axis a quarter turn counterclockwise from it.
    """

    center: Point
    half_u: float
    half_v: float
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "center", check_point(self.center))
        if not (self.half_u > 0.0 and self.half_v > 0.0):
            raise InvalidGeometry("degenerate rectangle")

    @staticmethod
    def from_corners(corners: Sequence) -> "Rect":
        """Rectangle from four corners listed in cyclic order."""
        p0, p1, p2, p3 = (check_point(c) for c in corners)
        center = Point((p0.x + p1.x + p2.x + p3.x) / 4.0, (p0.y + p1.y + p2.y + p3.y) / 4.0)
        e1 = p1 - p0
        e2 = p3 - p0
        return Rect(center, e1.norm() / 2.0, e2.norm() / 2.0, e1.angle())

    @property
    def u(self) -> Point:
        return direction(self.angle)

    @property
    def v(self) -> Point:
        u = self.u
        return Point(-u.y, u.x)

    def local(self, p) -> tuple:
        d = Point(p[0], p[1]) - self.center
        return d.dot(self.u), d.dot(self.v)

    def world(self, lu: float, lv: float) -> Point:
        return self.center + self.u * lu + self.v * lv

    def contains(self, p, tol: float = EPS) -> bool:
        lu, lv = self.local(p)
        return abs(lu) <= self.half_u + tol and abs(lv) <= self.half_v + tol

    def corners(self) -> tuple:
        hu, hv = self.half_u, self.half_v
        return (
            self.world(-hu, -hv),
            self.world(hu, -hv),
            self.world(hu, hv),
            self.world(-hu, hv),
        )
