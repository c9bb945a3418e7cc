"""Circle semigroups: all lattice points falling inside some dilation of a
rational circle.

Pipeline: classify how the circle meets the extremal rays of its cone,
compute the cone's Hilbert basis, install the true ray semigroups by
generator surgery (giving a semigroup that is exact on the rays and full in
the cone interior), locate the finitely many interior points that the
dilations miss, and delete them.  Every step is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bodies import Circle, ConeAnalysis, IntVec2, RayContact, analyze_circle
from .exactnum import QuadRat, quad_sqrt, rat_floor_sqrt
from .lattice_cone import (
    Cone2,
    GenSet,
    cone_of_body,
    hilbert_basis_2d,
    member_of_generated,
    minimalize,
    semigroup_grid,
)
from .ray_semigroups import interval_semigroup_gens, modular_inequality_holds
from .surgery import RaySurgerySpec, replace_ray_gens


class NotFinitelyGenerated(ValueError):
    """The semigroup admits no finite generating system."""

    def __init__(self, witness: str):
        super().__init__(f"not finitely generated: {witness}")
        self.witness = witness


@dataclass(frozen=True)
class FgDecision:
    verdict: str  # finitely_generated | not_finitely_generated | trivial_zero | full_cone
    witness: Optional[str] = None


@dataclass(frozen=True)
class RayData:
    """Semigroup data of one extremal ray: either the minimal multiple k of
    the primitive direction that the dilations reach (point contact), or
    the minimal generators lams of the chord interval semigroup."""

    contact: RayContact
    g: IntVec2
    k: Optional[int] = None
    lams: Optional[tuple[int, ...]] = None

    @property
    def max_multiple(self) -> int:
        return self.k if self.k is not None else max(self.lams)

    def surgery(self) -> RaySurgerySpec:
        g = self.g
        if self.k is not None:
            s_list = ((self.k * g[0], self.k * g[1]),)
        else:
            s_list = tuple((lam * g[0], lam * g[1]) for lam in sorted(self.lams))
        return RaySurgerySpec(g, g, s_list)


@dataclass(frozen=True)
class CircleAnalysis:
    """Everything the circle pipeline derives on the way to minimal
    generators; comparisons use squared distances throughout."""

    circle: Circle
    decision: FgDecision
    cone: Optional[Cone2]
    basis: Optional[GenSet]
    hi: Optional[RayData]
    lo: Optional[RayData]
    d_prime_sq: Optional[Fraction]
    i0: Optional[int]
    d_sq: Optional[Fraction]
    sprime: GenSet
    exceptional: frozenset[IntVec2]
    min_gens: GenSet


def tangent_rays(c: Circle) -> ConeAnalysis:
    """Exact classification of the two extremal-ray contacts (tangency
    points, axis chords, or the degenerate whole-quadrant / empty cases)."""
    return analyze_circle(c)


def circle_fg_decision(c: Circle) -> FgDecision:
    """Finite generation holds iff each extremal ray meets the circle in a
    set with a rational point; bodies missing the quadrant give {0}, and a
    circle containing the origin fills its whole cone."""
    ana = analyze_circle(c)
    if ana.kind == "zero":
        return FgDecision("trivial_zero")
    if ana.kind == "full":
        return FgDecision("full_cone")
    if ana.kind == "point_body":
        return FgDecision("finitely_generated")
    bad = []
    for name, contact in (("upper", ana.hi), ("lower", ana.lo)):
        if not contact.has_rational_point:
            bad.append(f"{name} extremal ray meets the circle only in irrational points")
    if bad:
        return FgDecision("not_finitely_generated", "; ".join(bad))
    return FgDecision("finitely_generated")


def circle_member(x: int, y: int, c: Circle) -> bool:
    """Membership via the two-dilation window: a member at squared distance
    n2 can only lie in dilation k or k+1 where k = floor(sqrt(n2 / |center|^2))."""
    if x < 0 or y < 0:
        raise ValueError("membership is defined on N^2")
    if x == 0 and y == 0:
        return True
    cn = c.center_norm_sq
    if cn == 0:
        return True
    n2 = Fraction(x * x + y * y)
    k = rat_floor_sqrt(n2 / cn)
    for i in (k, k + 1):
        dx = x - i * c.a
        dy = y - i * c.b
        if dx * dx + dy * dy <= (i * c.r) ** 2:
            return True
    return False


def dilation_index_window(x: int, y: int, c: Circle) -> Optional[tuple[int, int]]:
    """Integer interval of dilation indices i whose circle can contain
    (x, y): the solutions of e*i^2 - 2*w*i + n2 <= 0.  None if empty."""
    n2 = Fraction(x * x + y * y)
    e = c.center_norm_sq - c.r * c.r
    w = Fraction(c.a) * x + Fraction(c.b) * y
    if e <= 0:
        raise ValueError("window needs the origin outside the circle")
    disc = w * w - e * n2
    if disc < 0:
        return None
    root = quad_sqrt(disc)
    lo = ((QuadRat(w) - root) / e).ceil()
    hi = ((QuadRat(w) + root) / e).floor()
    if hi < lo or hi < 1:
        return None
    return max(lo, 1), hi


def exact_circle_member(x: int, y: int, c: Circle) -> bool:
    """Membership by exact scan of the full dilation-index window; valid for
    every circle, including wide ones where the two-dilation window of
    circle_member can miss the witnessing index."""
    if x < 0 or y < 0:
        raise ValueError("membership is defined on N^2")
    if x == 0 and y == 0:
        return True
    e = c.center_norm_sq - c.r * c.r
    if e < 0:
        return True
    if e == 0:
        return Fraction(c.a) * x + Fraction(c.b) * y > 0
    return dilation_index_window(x, y, c) is not None


def _tangency_gap(i: int, e: Fraction, r: Fraction) -> Optional[QuadRat]:
    """Distance from the lower extremal ray to the nearest point of the
    overlap of dilations i and i+1, for a ray touching the circle in one
    point.  Only e = |center|^2 - r^2 and r enter; the value is invariant
    under the rotation taking the ray to the x-axis."""
    w = 4 * r * r * (i * i + i) - e
    if w < 0:
        return None
    scale = e / (2 * (e + r * r))
    return QuadRat(scale * r * (1 + 2 * i)) - quad_sqrt(w) * scale


def _axis_gap_height(i: int, a: Fraction, b: Fraction, r: Fraction) -> Optional[QuadRat]:
    """Height above the x-axis of the lowest intersection point of the
    dilation-i and dilation-(i+1) circles with center (a, b) and radius r.
    Negative means the overlap lens crosses the axis."""
    if a == 0:
        raise ValueError("center must have positive first coordinate in this frame")
    e = a * a + b * b - r * r
    u = Fraction(2 * i + 1) * e / 2
    A = a * a + b * b
    C = (u - i * a * a) ** 2 + a * a * i * i * b * b - i * i * r * r * a * a
    disc = b * b * u * u - A * C
    if disc < 0:
        return None
    return (QuadRat(b * u) - quad_sqrt(disc)) / A


def overlap_height(i: int, c: Circle) -> Optional[QuadRat]:
    """Gap height h_i toward the lower extremal ray, None while consecutive
    dilations are still disjoint.  Defined for tangency contacts only."""
    if i < 1:
        raise ValueError("dilation index must be positive")
    ana = analyze_circle(c)
    if ana.kind != "cone":
        raise ValueError("overlap height needs a regular cone")
    if ana.lo.kind != "point":
        raise ValueError("height undefined for chord rays")
    e = c.center_norm_sq - c.r * c.r
    return _tangency_gap(i, e, c.r)


def _ray_gap(i: int, c: Circle, contact: RayContact, *, is_hi: bool) -> Optional[QuadRat]:
    if contact.kind == "point":
        return _tangency_gap(i, c.center_norm_sq - c.r * c.r, c.r)
    if is_hi:  # chord on the y-axis: swap coordinates
        return _axis_gap_height(i, c.b, c.a, c.r)
    return _axis_gap_height(i, c.a, c.b, c.r)


def _covered(h: Optional[QuadRat], d_prime_sq: Fraction) -> bool:
    if h is None:
        return False
    if h.sign() <= 0:
        return True
    return ((h * h) - d_prime_sq).sign() < 0


_I0_LIMIT = 500_000


def stabilization(c: Circle) -> tuple[Fraction, int, Fraction]:
    """(d_prime squared, i0, d squared): beyond distance d every lattice
    point strictly inside the cone belongs to the semigroup.

    d_prime is half the minimal distance from any off-ray lattice point to
    a ray, i0 the first dilation index from which both per-ray gap heights
    stay below d_prime, and d a rational upper bound on the radius that
    covers dilation i0 entirely.
    """
    decision = circle_fg_decision(c)
    if decision.verdict not in ("finitely_generated", "full_cone"):
        raise NotFinitelyGenerated(decision.witness or "semigroup is trivial")
    ana = analyze_circle(c)
    if ana.kind == "full":
        d_prime_sq = Fraction(1, 4)
        i0 = 1
    elif ana.kind == "point_body":
        raise ValueError("stabilization needs a body with non-trivial cone")
    else:
        dirs = [ana.hi.direction, ana.lo.direction]
        if any(d is None for d in dirs):
            raise NotFinitelyGenerated("irrational extremal ray")
        d_prime_sq = min(Fraction(1, 4 * (p * p + q * q)) for p, q in dirs)
        i0 = None
        for i in range(1, _I0_LIMIT):
            hi_h = _ray_gap(i, c, ana.hi, is_hi=True)
            lo_h = _ray_gap(i, c, ana.lo, is_hi=False)
            if _covered(hi_h, d_prime_sq) and _covered(lo_h, d_prime_sq):
                i0 = i
                break
        if i0 is None:
            raise RuntimeError("stabilization index not found below the search limit")
        for j in range(i0, i0 + 9):
            assert _covered(_ray_gap(j, c, ana.hi, is_hi=True), d_prime_sq)
            assert _covered(_ray_gap(j, c, ana.lo, is_hi=False), d_prime_sq)
    n2 = c.center_norm_sq
    ub = Fraction(
        math.isqrt(n2.numerator * n2.denominator) + 1, n2.denominator
    )
    d = i0 * (ub + c.r)
    return d_prime_sq, i0, d * d


def _ray_data(contact: RayContact, name: str) -> RayData:
    if contact.direction is None:
        raise NotFinitelyGenerated(f"{name} extremal ray has irrational slope")
    if contact.kind == "point":
        scalar = contact.scalars[0]
        if not scalar.is_rational:
            raise NotFinitelyGenerated(
                f"{name} extremal ray meets the circle only in irrational points"
            )
        return RayData(contact, contact.direction, k=scalar.as_fraction().numerator)
    alpha, beta = contact.scalars
    lams = tuple(sorted(interval_semigroup_gens(alpha, beta)))
    return RayData(contact, contact.direction, lams=lams)


def sprime_generators(c: Circle, analysis: Optional["CircleAnalysis"] = None) -> GenSet:
    """Minimal generators of the auxiliary semigroup that matches the circle
    semigroup on both rays and fills the whole cone interior."""
    if analysis is not None:
        return analysis.sprime
    return analyze_circle_pipeline(c).sprime


def _build_sprime(basis: GenSet, hi: RayData, lo: RayData) -> GenSet:
    out = replace_ray_gens(basis, hi.surgery())
    out = replace_ray_gens(out, lo.surgery())
    return out


def _triangle_corner_points(ana: ConeAnalysis, i0: int):
    """Far contact points of both rays scaled by i0: together with the
    origin they cut off the region that can still miss the semigroup."""
    a_pt = tuple(QuadRat.of(v) * i0 for v in ana.hi.points[-1])
    b_pt = tuple(QuadRat.of(v) * i0 for v in ana.lo.points[-1])
    return a_pt, b_pt


def exceptional_set(
    c: Circle, analysis: Optional["CircleAnalysis"] = None, sprime: Optional[GenSet] = None
) -> frozenset[IntVec2]:
    """Lattice points of the auxiliary semigroup that the dilations miss.

    Enumerates the triangle spanned by the origin and the two scaled far
    contact points (all misses lie there; beyond it, strip heights are
    already below the lattice clearance), keeping points that generate from
    sprime but fail membership.
    """
    if analysis is None:
        analysis = analyze_circle_pipeline(c)
    if analysis.decision.verdict == "trivial_zero":
        return frozenset()
    if sprime is None:
        sprime = analysis.sprime
    if analysis.decision.verdict == "full_cone":
        return frozenset()
    if analysis.cone is None or analysis.cone.degenerate:
        return frozenset()
    ana = analyze_circle(c)
    a_pt, b_pt = _triangle_corner_points(ana, analysis.i0)
    xmax = max(a_pt[0], b_pt[0]).floor()
    ymax = max(a_pt[1], b_pt[1]).floor()
    cone = analysis.cone
    grid = semigroup_grid(sprime.points, (max(xmax, 0), max(ymax, 0)))

    ax, ay = a_pt
    bx, by = b_pt
    out = []
    for x in range(xmax + 1):
        for y in range(ymax + 1):
            if not cone.strictly_inside(x, y):
                continue
            # inside triangle O -> A -> B (clockwise): all crosses <= 0
            if (ax * y - ay * x).sign() > 0:
                continue
            if ((bx - ax) * (y - ay) - (by - ay) * (x - ax)).sign() > 0:
                continue
            if (bx * y - by * x).sign() < 0:
                continue
            if not grid[x, y]:
                continue
            if not exact_circle_member(x, y, c):
                out.append((x, y))
    return frozenset(out)


def analyze_circle_pipeline(c: Circle) -> CircleAnalysis:
    """Run the whole pipeline once and keep every intermediate artifact."""
    from .surgery import remove_finite_set

    decision = circle_fg_decision(c)
    empty = GenSet(frozenset(), True)
    if decision.verdict == "trivial_zero":
        return CircleAnalysis(c, decision, None, None, None, None,
                              None, None, None, empty, frozenset(), empty)
    if decision.verdict == "not_finitely_generated":
        raise NotFinitelyGenerated(decision.witness)

    data = cone_of_body(c)
    if decision.verdict == "full_cone":
        basis = hilbert_basis_2d(data.cone)
        d_prime_sq, i0, d_sq = stabilization(c)
        return CircleAnalysis(c, decision, data.cone, basis, None, None,
                              d_prime_sq, i0, d_sq, basis, frozenset(), basis)
    if data.kind == "point_body":
        px, py = data.single_point
        scalar = data.hi.scalars[0].as_fraction()
        g = data.hi.direction
        k = scalar.numerator
        gens = GenSet.of([(k * g[0], k * g[1])], minimal=True)
        return CircleAnalysis(c, decision, data.cone, None,
                              _ray_data(data.hi, "upper"), None,
                              None, None, None, gens, frozenset(), gens)

    basis = hilbert_basis_2d(data.cone)
    hi = _ray_data(data.hi, "upper")
    lo = _ray_data(data.lo, "lower")
    d_prime_sq, i0, d_sq = stabilization(c)
    sprime = _build_sprime(basis, hi, lo)
    partial = CircleAnalysis(c, decision, data.cone, basis, hi, lo,
                             d_prime_sq, i0, d_sq, sprime, frozenset(), sprime)
    exc = exceptional_set(c, partial, sprime)
    final = remove_finite_set(sprime, set(exc))
    return CircleAnalysis(c, decision, data.cone, basis, hi, lo,
                          d_prime_sq, i0, d_sq, sprime, exc, final)


def circle_min_gens(c: Circle) -> GenSet:
    """Minimal generating system of the circle semigroup."""
    return analyze_circle_pipeline(c).min_gens


def circle_modular_inequality(x: int, y: int, c: Circle) -> bool:
    """Membership test through the modular inequality with coefficients cut
    by the chord of the ray through (x, y).

    Works with the ratios d(P)/d(X), d(Q)/d(X), which live in the quadratic
    extension generated by the chord radicand, so the whole test is exact.
    """
    if x == 0 and y == 0:
        raise ValueError("the origin has no defining ray")
    if x < 0 or y < 0:
        raise ValueError("membership is defined on N^2")
    n2 = Fraction(x * x + y * y)
    radicand = n2 * c.r * c.r - (Fraction(c.b) * x - Fraction(c.a) * y) ** 2
    if radicand <= 0:
        raise ValueError("ray outside body")
    if c.center_norm_sq <= c.r * c.r:
        return True
    w = Fraction(c.a) * x + Fraction(c.b) * y
    root = quad_sqrt(radicand)
    d_p = (QuadRat(w) - root) / n2
    d_q = (QuadRat(w) + root) / n2
    return modular_inequality_holds(QuadRat(1), d_p, d_q)
