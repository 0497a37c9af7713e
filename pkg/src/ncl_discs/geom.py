"""Planar geometry primitives: segments, circular arcs, rigid transforms.

All coordinates are in grid units (one wall is 1 unit thick, cells are
18x18). Obstacles are thin boundary pieces; free space is whatever the
clearance predicates in :mod:`ncl_discs.cspace` carve out of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

Point = tuple[float, float]


def almost_equal(a: float, b: float, tol: float = 1e-9) -> bool:
    return abs(a - b) <= tol


def dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def norm_angle(a: float) -> float:
    """Normalize an angle to [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    if a < 0:
        a += TWO_PI
    # fmod can return TWO_PI - tiny; collapse exact wrap
    if almost_equal(a, TWO_PI, 1e-15):
        a = 0.0
    return a


@dataclass(frozen=True)
class Segment:
    ax: float
    ay: float
    bx: float
    by: float

    def __post_init__(self) -> None:
        if self.ax == self.bx and self.ay == self.by:
            raise ValueError("degenerate segment")

    @property
    def a(self) -> Point:
        return (self.ax, self.ay)

    @property
    def b(self) -> Point:
        return (self.bx, self.by)

    def distance(self, p: Point) -> float:
        vx, vy = self.bx - self.ax, self.by - self.ay
        wx, wy = p[0] - self.ax, p[1] - self.ay
        vv = vx * vx + vy * vy
        t = (wx * vx + wy * vy) / vv
        t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
        return math.hypot(wx - t * vx, wy - t * vy)


@dataclass(frozen=True)
class Arc:
    """Circular arc traversed counterclockwise from ``a0`` to ``a1``.

    ``a0`` is normalized to [0, 2*pi); ``a1`` satisfies a0 <= a1 <= a0 + 2*pi.
    """

    cx: float
    cy: float
    r: float
    a0: float
    a1: float

    def __post_init__(self) -> None:
        if self.r <= 0:
            raise ValueError("arc radius must be positive")
        a0 = norm_angle(self.a0)
        span = self.a1 - self.a0
        if span <= 0 or span > TWO_PI + 1e-12:
            raise ValueError("arc span must lie in (0, 2*pi]")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "a1", a0 + span)

    @property
    def center(self) -> Point:
        return (self.cx, self.cy)

    @property
    def span(self) -> float:
        return self.a1 - self.a0

    def point_at(self, angle: float) -> Point:
        return (self.cx + self.r * math.cos(angle), self.cy + self.r * math.sin(angle))

    @property
    def start(self) -> Point:
        return self.point_at(self.a0)

    @property
    def end(self) -> Point:
        return self.point_at(self.a1)

    def contains_angle(self, angle: float) -> bool:
        a = norm_angle(angle)
        if a < self.a0:
            a += TWO_PI
        return a <= self.a1 + 1e-12

    def distance(self, p: Point) -> float:
        dx, dy = p[0] - self.cx, p[1] - self.cy
        rho = math.hypot(dx, dy)
        if rho == 0.0:
            return self.r
        if self.contains_angle(math.atan2(dy, dx)):
            return abs(rho - self.r)
        return min(dist(p, self.start), dist(p, self.end))


Obstacle = Segment | Arc


_ROT = {
    0: (1.0, 0.0, 0.0, 1.0),
    90: (0.0, -1.0, 1.0, 0.0),
    180: (-1.0, 0.0, 0.0, -1.0),
    270: (0.0, 1.0, -1.0, 0.0),
}


@dataclass(frozen=True)
class RigidTransform:
    """Mirror (across the y-axis) first, then rotate CCW, then translate."""

    rotation: int = 0
    mirror: bool = False
    tx: float = 0.0
    ty: float = 0.0

    def __post_init__(self) -> None:
        if self.rotation not in _ROT:
            raise ValueError("rotation must be one of 0, 90, 180, 270")

    def matrix(self) -> tuple[float, float, float, float]:
        m00, m01, m10, m11 = _ROT[self.rotation]
        if self.mirror:
            m00, m10 = -m00, -m10
        return (m00, m01, m10, m11)

    def apply(self, p: Point) -> Point:
        m00, m01, m10, m11 = self.matrix()
        return (m00 * p[0] + m01 * p[1] + self.tx, m10 * p[0] + m11 * p[1] + self.ty)

    def apply_vector(self, v: Point) -> Point:
        m00, m01, m10, m11 = self.matrix()
        return (m00 * v[0] + m01 * v[1], m10 * v[0] + m11 * v[1])

    def apply_segment(self, s: Segment) -> Segment:
        a = self.apply(s.a)
        b = self.apply(s.b)
        return Segment(a[0], a[1], b[0], b[1])

    def apply_arc(self, arc: Arc) -> Arc:
        c = self.apply(arc.center)
        if self.mirror:
            # reflection reverses orientation; the image of [a0, a1] CCW is
            # [pi - a1, pi - a0] CCW before rotation
            a0 = math.pi - arc.a1 + math.radians(self.rotation)
            a1 = math.pi - arc.a0 + math.radians(self.rotation)
        else:
            a0 = arc.a0 + math.radians(self.rotation)
            a1 = arc.a1 + math.radians(self.rotation)
        return Arc(c[0], c[1], arc.r, norm_angle(a0), norm_angle(a0) + (a1 - a0))

    def apply_obstacle(self, ob: Obstacle) -> Obstacle:
        if isinstance(ob, Segment):
            return self.apply_segment(ob)
        return self.apply_arc(ob)

    def compose(self, other: "RigidTransform") -> "RigidTransform":
        """Return the transform equivalent to applying ``other`` then ``self``."""
        sm = self.matrix()
        t = self.apply((other.tx, other.ty))
        rotation = (self.rotation + (-other.rotation if self.mirror else other.rotation)) % 360
        mirror = self.mirror != other.mirror
        combined = RigidTransform(rotation, mirror, t[0], t[1])
        cm = combined.matrix()
        om = other.matrix()
        check = (
            sm[0] * om[0] + sm[1] * om[2],
            sm[0] * om[1] + sm[1] * om[3],
            sm[2] * om[0] + sm[3] * om[2],
            sm[2] * om[1] + sm[3] * om[3],
        )
        assert all(almost_equal(c, d, 1e-12) for c, d in zip(cm, check))
        return combined


IDENTITY = RigidTransform()


def obstacle_distance(p: Point, obstacles: list[Obstacle] | tuple[Obstacle, ...]) -> float:
    """Distance from ``p`` to the nearest obstacle boundary piece."""
    return min(ob.distance(p) for ob in obstacles)
