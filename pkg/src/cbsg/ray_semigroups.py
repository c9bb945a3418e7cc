"""Semigroups generated by dilations of a segment on a ray.

The segment [alpha*u, beta*u] on a rational ray reduces exactly to the
numerical problem: which integers t satisfy i*alpha <= t <= i*beta for some
natural i?  That set stabilizes into a full integer tail once consecutive
dilated intervals overlap, so its minimal generators are computable with a
finite amount of exact arithmetic.  The same machinery evaluates the
modular inequality a*d(X) mod b <= d(X) that characterizes membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .bodies import RaySegment
from .exactnum import QuadLike, QuadRat
from .lattice_cone import GenSet


@dataclass(frozen=True)
class NumSG:
    """Finite generating set of a subsemigroup of (N, +)."""

    gens: frozenset[int]
    minimal: bool = False

    @staticmethod
    def of(values: Iterable[int], minimal: bool = False) -> "NumSG":
        return NumSG(frozenset(int(v) for v in values), minimal)

    def sorted_gens(self) -> list[int]:
        return sorted(self.gens)

    def __iter__(self):
        return iter(self.sorted_gens())

    def __len__(self):
        return len(self.gens)


def _minimal_numerical(members: set[int], tail_start: int, cap: int) -> list[int]:
    """Minimal generators of the semigroup (members up to cap) ∪ [tail, ∞),
    where members already lists every element <= cap and cap >= 2*tail."""
    arr = np.array(sorted(m for m in members if 0 < m <= cap), dtype=np.int64)
    if arr.size == 0:
        return []
    sums = (arr[:, None] + arr[None, :]).ravel()
    sums = set(sums[sums <= cap].tolist())
    return [int(t) for t in arr.tolist() if t not in sums]


def interval_semigroup_gens(alpha: QuadLike, beta: QuadLike) -> NumSG:
    """Minimal generators of {t in N : exists i in N with i*alpha <= t <= i*beta}.

    Finds the first index k at which consecutive dilated intervals overlap
    (k*beta >= (k+1)*alpha), collects every integer hit before that, and
    closes the integer tail that starts at ceil((k+1)*alpha).
    """
    alpha, beta = QuadRat.of(alpha), QuadRat.of(beta)
    if alpha.sign() < 0:
        raise ValueError("alpha must be non-negative")
    if alpha.sign() == 0:
        return NumSG.of([1], minimal=True)
    if (beta - alpha).sign() <= 0:
        raise ValueError("degenerate interval: alpha < beta required")
    k = (alpha / (beta - alpha)).ceil()
    k = max(k, 1)
    tail_start = ((k + 1) * alpha).ceil()
    cap = 2 * tail_start + 2
    members: set[int] = set(range(tail_start, cap + 1))
    for i in range(1, k + 1):
        lo = (alpha * i).ceil()
        hi = (beta * i).floor()
        members.update(range(max(lo, 1), min(hi, cap) + 1))
    return NumSG.of(_minimal_numerical(members, tail_start, cap), minimal=True)


def numerical_members(gens: Iterable[int], bound: int) -> list[int]:
    """All elements of <gens> up to bound, by one-dimensional DP."""
    reach = np.zeros(bound + 1, dtype=bool)
    reach[0] = True
    for g in sorted(set(int(g) for g in gens)):
        if g <= 0:
            raise ValueError("generators must be positive")
        for t in range(g, bound + 1):
            if reach[t - g]:
                reach[t] = True
    return [int(t) for t in np.nonzero(reach)[0].tolist()]


def segment_semigroup(seg: RaySegment) -> GenSet:
    """Minimal generators of (union of dilated copies of the segment) ∩ N^2.

    Lattice points on the ray are exactly the integer multiples of the
    primitive direction, so the problem is the interval semigroup of
    (alpha, beta) pushed forward along the direction.  The RaySegment type
    already guarantees a primitive N^2 direction, which is the rational
    non-negative slope case; other rays carry semigroup {0}.
    """
    dx, dy = seg.direction
    scalars = interval_semigroup_gens(seg.alpha, seg.beta)
    return GenSet.of(((t * dx, t * dy) for t in scalars), minimal=True)


def modular_inequality_holds(dX: QuadLike, dP: QuadLike, dQ: QuadLike) -> bool:
    """Evaluate a*dX mod b <= dX with a = dQ/(dQ-dP), b = dP*dQ/(dQ-dP).

    The remainder is the real one: a*dX - floor(a*dX/b)*b, computed exactly
    over the quadratic extension.
    """
    dX, dP, dQ = QuadRat.of(dX), QuadRat.of(dP), QuadRat.of(dQ)
    if (dQ - dP).sign() == 0:
        raise ValueError("degenerate interval")
    if dP.sign() <= 0 or (dQ - dP).sign() < 0:
        raise ValueError("0 < dP < dQ is required")
    if dX.sign() < 0:
        raise ValueError("dX must be non-negative")
    span = dQ - dP
    a = dQ / span
    b = dP * dQ / span
    prod = a * dX
    rem = prod - b * (prod / b).floor()
    return (rem - dX).sign() <= 0


def general_inequality_witness(
    dX: QuadLike, dP: QuadLike, dQ: Optional[QuadLike] = None
) -> tuple[QuadRat, QuadRat]:
    """A pair (a, b) with 1 < a < b and a*dX mod b <= dX, for a point X of
    the ray semigroup at distance dX from the origin.

    dP (and dQ, when the ray meets the body in a segment) are the distances
    of the ray-body intersection.  For a single-point intersection the
    witness is (2, 2*i*dP) where X sits in the i-th dilation; X = 0 gets
    the canonical (2, 3).
    """
    dX = QuadRat.of(dX)
    if dX.sign() < 0:
        raise ValueError("dX must be non-negative")
    if dX.sign() == 0:
        return (QuadRat(2), QuadRat(3))
    dP = QuadRat.of(dP)
    if dP.sign() <= 0:
        raise ValueError("dP must be positive")
    if dQ is None:
        ratio = dX / dP
        if not ratio.is_rational or ratio.as_fraction().denominator != 1 \
                or ratio.as_fraction() < 1:
            raise ValueError("not a member")
        i = int(ratio.as_fraction())
        return (QuadRat(2), QuadRat(2) * i * dP)
    dQ = QuadRat.of(dQ)
    if not modular_inequality_holds(dX, dP, dQ):
        raise ValueError("not a member")
    span = dQ - dP
    return (dQ / span, dP * dQ / span)
