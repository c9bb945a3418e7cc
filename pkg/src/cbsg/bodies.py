"""Convex body types for the plane and their exact ray geometry.

A body is a circle with rational data, a convex polygon with coordinates in
a single real quadratic extension, or a segment sitting on a rational ray.
This module classifies how each body meets the extremal rays of its cone;
everything downstream (Hilbert bases, ray semigroups, the main pipelines)
keys off that classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactnum import (
    QuadRat,
    QuadLike,
    is_rational_square,
    primitive,
    quad_sqrt,
)

QPoint = tuple[QuadRat, QuadRat]
IntVec2 = tuple[int, int]


def qpoint(x: QuadLike, y: QuadLike) -> QPoint:
    return (QuadRat.of(x), QuadRat.of(y))


class BodyError(ValueError):
    """Invalid body data."""


@dataclass(frozen=True)
class Circle:
    """Circle with rational center (a, b) and rational radius r > 0."""

    a: Fraction
    b: Fraction
    r: Fraction

    def __post_init__(self):
        for f in (self.a, self.b, self.r):
            if not isinstance(f, Fraction):
                raise BodyError("circle data must be exact rationals")
        if self.r <= 0:
            raise BodyError("radius must be positive")

    def contains(self, x: Fraction, y: Fraction) -> bool:
        dx, dy = x - self.a, y - self.b
        return dx * dx + dy * dy <= self.r * self.r

    @property
    def center_norm_sq(self) -> Fraction:
        return self.a * self.a + self.b * self.b


@dataclass(frozen=True)
class Polygon:
    """Compact convex polygon, vertices in clockwise order, inside the
    closed first quadrant, with coordinates in one quadratic extension."""

    vertices: tuple[QPoint, ...]

    def __post_init__(self):
        verts = tuple((QuadRat.of(x), QuadRat.of(y)) for x, y in self.vertices)
        if len(verts) < 3:
            raise BodyError("polygon needs at least 3 vertices")
        discs = {c.disc for p in verts for c in p if not c.is_rational}
        if len(discs) > 1:
            raise BodyError("polygon vertices mix quadratic extensions")
        for x, y in verts:
            if x.sign() < 0 or y.sign() < 0:
                raise BodyError("polygon must lie in the closed first quadrant")
        area2 = QuadRat.of(0)
        n = len(verts)
        for i in range(n):
            x1, y1 = verts[i]
            x2, y2 = verts[(i + 1) % n]
            area2 = area2 + (x1 * y2 - x2 * y1)
        s = area2.sign()
        if s == 0:
            raise BodyError("polygon is degenerate")
        if s > 0:
            verts = (verts[0],) + tuple(reversed(verts[1:]))
        for i in range(n):
            o = verts[i]
            u = verts[(i + 1) % n]
            w = verts[(i + 2) % n]
            cr = (u[0] - o[0]) * (w[1] - u[1]) - (u[1] - o[1]) * (w[0] - u[0])
            if cr.sign() >= 0:
                raise BodyError("polygon must be strictly convex")
        object.__setattr__(self, "vertices", verts)

    def edges(self):
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    def contains(self, p: QPoint) -> bool:
        px, py = QuadRat.of(p[0]), QuadRat.of(p[1])
        for (x1, y1), (x2, y2) in self.edges():
            cr = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
            if cr.sign() > 0:
                return False
        return True

    @property
    def all_rational(self) -> bool:
        return all(x.is_rational and y.is_rational for x, y in self.vertices)


@dataclass(frozen=True)
class RaySegment:
    """Segment [alpha*direction, beta*direction] on the rational ray spanned
    by a primitive lattice direction."""

    direction: IntVec2
    alpha: QuadRat
    beta: QuadRat

    def __post_init__(self):
        dx, dy = self.direction
        if dx < 0 or dy < 0 or (dx == 0 and dy == 0):
            raise BodyError("direction must be a nonzero vector of N^2")
        if (dx, dy) != primitive((dx, dy)):
            raise BodyError("direction must be primitive")
        a, b = QuadRat.of(self.alpha), QuadRat.of(self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if a.sign() < 0:
            raise BodyError("alpha must be non-negative")
        if (b - a).sign() <= 0:
            raise BodyError("alpha < beta is required")


ConvexBody2 = Union[Circle, Polygon, RaySegment]


# -- ray contacts ------------------------------------------------------


@dataclass(frozen=True)
class RayContact:
    """How a body meets one extremal ray of its cone.

    kind is "point" or "segment".  `direction` is the primitive lattice
    direction when the ray has rational slope, else None.  `points` holds
    the contact, ordered by distance from the origin.  `scalars` expresses
    the contact points as multiples of `direction` when that exists.
    """

    kind: str
    points: tuple[QPoint, ...]
    direction: Optional[IntVec2]
    scalars: Optional[tuple[QuadRat, ...]]

    @property
    def has_rational_point(self) -> bool:
        if self.kind == "point":
            x, y = self.points[0]
            return x.is_rational and y.is_rational
        # a segment of positive length on a ray holds rational points
        # exactly when the ray's slope is rational
        return self.direction is not None


@dataclass(frozen=True)
class ConeAnalysis:
    """Extremal-ray summary of a body within the closed quadrant.

    kind: "zero"  (body misses the open quadrant; semigroup is {0})
          "point_body"  (body meets the quadrant in a single point)
          "full"  (origin inside the body; cone is the whole quadrant)
          "cone"  (regular case with two contacts, hi slope > lo slope)
    """

    kind: str
    hi: Optional[RayContact] = None
    lo: Optional[RayContact] = None
    single_point: Optional[QPoint] = None


def _slope_direction(p: QPoint) -> Optional[IntVec2]:
    """Primitive integer direction of the ray through p, or None when the
    slope is irrational."""
    x, y = p
    if x.sign() == 0:
        return (0, 1)
    if y.sign() == 0:
        return (1, 0)
    slope = y / x
    if not slope.is_rational:
        return None
    s = slope.as_fraction()
    return primitive((s.denominator, s.numerator))


def _scalar_along(p: QPoint, direction: IntVec2) -> QuadRat:
    dx, dy = direction
    return p[0] / dx if dx else p[1] / dy


def _contact(points: list[QPoint]) -> RayContact:
    witness = next(p for p in points if p[0].sign() or p[1].sign())
    direction = _slope_direction(witness)
    scalars = None
    if direction is not None:
        scalars = tuple(_scalar_along(p, direction) for p in points)
    kind = "point" if len(points) == 1 else "segment"
    return RayContact(kind, tuple(points), direction, scalars)


def _tangent_slopes(c: Circle) -> list[QuadRat]:
    """Slopes m of lines y = m x through the origin tangent to the circle,
    from the quadratic (a^2 - r^2) m^2 - 2ab m + (b^2 - r^2) = 0."""
    a, b, r = c.a, c.b, c.r
    lead = a * a - r * r
    e = a * a + b * b - r * r
    if lead == 0:
        if a * b == 0:
            return []
        return [QuadRat(Fraction(b * b - r * r, 2 * a * b))]
    root = quad_sqrt(r * r * e)
    return [
        (QuadRat(a * b) - root) / QuadRat(lead),
        (QuadRat(a * b) + root) / QuadRat(lead),
    ]


def _tangency_point(c: Circle, m: QuadRat) -> QPoint:
    t = (QuadRat(c.a) + m * c.b) / (QuadRat(1) + m * m)
    return (t, m * t)


def analyze_circle(c: Circle) -> ConeAnalysis:
    a, b, r = c.a, c.b, c.r
    gap_sq = min(a, 0) ** 2 + min(b, 0) ** 2
    r_sq = r * r
    if gap_sq > r_sq:
        return ConeAnalysis("zero")
    if gap_sq == r_sq:
        p = qpoint(Fraction(max(a, 0)), Fraction(max(b, 0)))
        if p[0].sign() == 0 and p[1].sign() == 0:
            return ConeAnalysis("zero")
        return ConeAnalysis("point_body", single_point=p)
    if c.center_norm_sq <= r_sq:
        return ConeAnalysis("full")

    hi: Optional[RayContact] = None
    lo: Optional[RayContact] = None
    if b < r:
        s = quad_sqrt(r_sq - b * b)
        lo = _contact([(QuadRat(a) - s, QuadRat(0)), (QuadRat(a) + s, QuadRat(0))])
    elif b == r:
        lo = _contact([qpoint(a, Fraction(0))])
    if a < r:
        s = quad_sqrt(r_sq - a * a)
        hi = _contact([(QuadRat(0), QuadRat(b) - s), (QuadRat(0), QuadRat(b) + s)])
    elif a == r:
        hi = _contact([qpoint(Fraction(0), b)])

    if hi is None or lo is None:
        candidates = []
        for m in _tangent_slopes(c):
            if m.sign() < 0:
                continue
            p = _tangency_point(c, m)
            if p[0].sign() >= 0 and p[1].sign() >= 0:
                candidates.append((m, p))
        candidates.sort(key=lambda mp: mp[0], reverse=True)
        if hi is None:
            m, p = candidates[0]
            hi = _contact([p])
            candidates = candidates[1:]
        if lo is None:
            m, p = candidates[-1]
            lo = _contact([p])
    return ConeAnalysis("cone", hi=hi, lo=lo)


def _slope_cross(p: QPoint, q: QPoint) -> int:
    """Sign of slope(p) - slope(q) for points of the closed quadrant."""
    return (p[1] * q[0] - q[1] * p[0]).sign()


def analyze_polygon(f: Polygon) -> ConeAnalysis:
    verts = list(f.vertices)
    nonzero = [p for p in verts if p[0].sign() or p[1].sign()]
    origin_in = len(nonzero) < len(verts)

    hi_v = nonzero[0]
    lo_v = nonzero[0]
    for p in nonzero[1:]:
        if _slope_cross(p, hi_v) > 0:
            hi_v = p
        if _slope_cross(p, lo_v) < 0:
            lo_v = p

    def contact_on(ref: QPoint) -> RayContact:
        on_ray = [p for p in nonzero if _slope_cross(p, ref) == 0]
        if origin_in:
            on_ray.append(qpoint(Fraction(0), Fraction(0)))
        dirn = _slope_direction(ref)
        if dirn is not None:
            on_ray.sort(key=lambda p: _scalar_along(p, dirn))
        else:
            key = 0 if ref[0].sign() else 1
            on_ray.sort(key=lambda p: p[key])
        pts = [on_ray[0], on_ray[-1]] if len(on_ray) > 1 else on_ray
        return _contact(pts)

    if _slope_cross(hi_v, lo_v) == 0:
        raise BodyError("polygon is degenerate: a single ray carries it")
    return ConeAnalysis("cone", hi=contact_on(hi_v), lo=contact_on(lo_v))


def analyze_body(body: ConvexBody2) -> ConeAnalysis:
    if isinstance(body, Circle):
        return analyze_circle(body)
    if isinstance(body, Polygon):
        return analyze_polygon(body)
    if isinstance(body, RaySegment):
        p = (QuadRat.of(body.alpha) * body.direction[0],
             QuadRat.of(body.alpha) * body.direction[1])
        q = (QuadRat.of(body.beta) * body.direction[0],
             QuadRat.of(body.beta) * body.direction[1])
        pts = [p, q]
        contact = RayContact("segment", tuple(pts), body.direction,
                             (body.alpha, body.beta))
        return ConeAnalysis("ray", hi=contact, lo=contact)
    raise TypeError(f"not a convex body: {type(body).__name__}")


# -- misc exact helpers used by several modules ------------------------


def quad_bounds(q: QuadRat, scale: int = 1 << 20) -> tuple[Fraction, Fraction]:
    """Rational bracket [lo, hi] around q with width 1/scale."""
    n = (q * scale).floor()
    return Fraction(n, scale), Fraction(n + 1, scale)


def norm_sq(p: QPoint) -> QuadRat:
    return p[0] * p[0] + p[1] * p[1]


def point_segment_dist_sq(p: QPoint, a: QPoint, b: QPoint) -> QuadRat:
    """Exact squared distance from p to the segment [a, b]."""
    ax, ay = a
    ux, uy = b[0] - ax, b[1] - ay
    px, py = p[0] - ax, p[1] - ay
    denom = ux * ux + uy * uy
    if denom.sign() == 0:
        return px * px + py * py
    t = (px * ux + py * uy) / denom
    if t.sign() < 0:
        t = QuadRat(0)
    elif (t - 1).sign() > 0:
        t = QuadRat(1)
    dx, dy = px - t * ux, py - t * uy
    return dx * dx + dy * dy


def polygon_norm_bounds(f: Polygon) -> tuple[Fraction, Fraction]:
    """Rational (lower bound on min, upper bound on max) of the distance
    from the origin to the polygon, squared."""
    o = qpoint(Fraction(0), Fraction(0))
    dmax = max(norm_sq(v) for v in f.vertices)
    best = None
    for a, b in f.edges():
        d = point_segment_dist_sq(o, a, b)
        if best is None or d < best:
            best = d
    lo = quad_bounds(best)[0]
    hi = quad_bounds(dmax)[1]
    return max(lo, Fraction(0)), hi
