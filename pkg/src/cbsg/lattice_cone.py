"""Rational cones in the plane, their lifted 3-dimensional counterparts,
Hilbert bases, and minimal generating systems of subsemigroups of N^2.

Membership in a generated semigroup is decided by dynamic programming over
a bounded box; the 2-dimensional case runs on a boolean grid so that the
surgery pipelines stay fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .bodies import ConeAnalysis, ConvexBody2, IntVec2, QPoint, RayContact, analyze_body
from .exactnum import primitive

IntVec3 = tuple[int, int, int]


@dataclass(frozen=True)
class Cone2:
    """Pointed rational cone between two primitive rays of the closed first
    quadrant; ray_hi has the strictly larger slope unless degenerate."""

    ray_hi: IntVec2
    ray_lo: IntVec2
    degenerate: bool = False

    def __post_init__(self):
        for ray in (self.ray_hi, self.ray_lo):
            if ray[0] < 0 or ray[1] < 0 or ray == (0, 0):
                raise ValueError("rays must be nonzero vectors of N^2")
            if primitive(ray) != ray:
                raise ValueError("rays must be primitive")
        cross = self.ray_lo[0] * self.ray_hi[1] - self.ray_lo[1] * self.ray_hi[0]
        if self.degenerate:
            if self.ray_hi != self.ray_lo:
                raise ValueError("degenerate cone must repeat its ray")
        elif cross <= 0:
            raise ValueError("ray_hi must have the larger slope")

    def contains(self, x: int, y: int) -> bool:
        if x < 0 or y < 0:
            return False
        hx, hy = self.ray_hi
        lx, ly = self.ray_lo
        if self.degenerate:
            return hx * y == hy * x
        return hx * y - hy * x <= 0 and lx * y - ly * x >= 0

    def strictly_inside(self, x: int, y: int) -> bool:
        if x <= 0 and y <= 0:
            return False
        hx, hy = self.ray_hi
        lx, ly = self.ray_lo
        if self.degenerate:
            return False
        return hx * y - hy * x < 0 and lx * y - ly * x > 0


@dataclass(frozen=True)
class GenSet:
    """Finite generating set of a subsemigroup of N^2."""

    points: frozenset[IntVec2]
    minimal: bool = False

    @staticmethod
    def of(points: Iterable[IntVec2], minimal: bool = False) -> "GenSet":
        return GenSet(frozenset((int(x), int(y)) for x, y in points), minimal)

    def sorted_points(self) -> list[IntVec2]:
        return sorted(self.points)

    def __iter__(self):
        return iter(self.sorted_points())

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.points


@dataclass(frozen=True)
class GenSet3:
    """Finite generating set of a subsemigroup of N^3."""

    points: frozenset[IntVec3]
    minimal: bool = False

    @staticmethod
    def of(points: Iterable[IntVec3], minimal: bool = False) -> "GenSet3":
        return GenSet3(frozenset(tuple(int(c) for c in p) for p in points), minimal)

    def sorted_points(self) -> list[IntVec3]:
        return sorted(self.points)

    def __iter__(self):
        return iter(self.sorted_points())

    def __len__(self) -> int:
        return len(self.points)


# -- bounded membership ------------------------------------------------


def semigroup_grid(gens: Iterable[IntVec2], box: IntVec2) -> np.ndarray:
    """Boolean grid of shape (box_x+1, box_y+1): cell (x, y) is True iff
    (x, y) is an N-combination of the generators.

    Single-pass dynamic programming in lexicographic order; valid because
    every generator strictly increases x, or fixes x and increases y.
    """
    W, H = box
    grid = np.zeros((W + 1, H + 1), dtype=bool)
    grid[0, 0] = True
    horiz = []
    vert = []
    for gx, gy in set(gens):
        gx, gy = int(gx), int(gy)
        if gx == 0 and gy == 0:
            continue
        if gx < 0 or gy < 0:
            raise ValueError("generators must lie in N^2")
        if gx > W or gy > H:
            continue
        (vert if gx == 0 else horiz).append((gx, gy))
    for x in range(W + 1):
        row = grid[x]
        for gx, gy in horiz:
            if gx <= x:
                src = grid[x - gx]
                if gy:
                    row[gy:] |= src[: H + 1 - gy]
                else:
                    row |= src
        if vert:
            for y in range(1, H + 1):
                if not row[y]:
                    for _, gy in vert:
                        if gy <= y and row[y - gy]:
                            row[y] = True
                            break
    return grid


def member_of_generated(p: IntVec2, gens: Iterable[IntVec2] | GenSet) -> bool:
    """Whether p is a non-negative integer combination of the generators."""
    x, y = int(p[0]), int(p[1])
    if x < 0 or y < 0:
        return False
    if x == 0 and y == 0:
        return True
    pts = gens.points if isinstance(gens, GenSet) else gens
    return bool(semigroup_grid(pts, (x, y))[x, y])


def _redundant_in_grid(p: IntVec2, grid: np.ndarray) -> bool:
    """Whether p splits as s + t with both parts nonzero members."""
    x, y = p
    sub = grid[: x + 1, : y + 1]
    both = sub & sub[::-1, ::-1]
    both[0, 0] = False
    both[x, y] = False
    return bool(both.any())


def minimalize(points: Iterable[IntVec2]) -> GenSet:
    """Unique minimal generating subset of the semigroup the input generates.

    An element is kept iff it is not a sum of two nonzero members; every
    generating set contains the minimal one, so this is exact.
    """
    pts = {(int(x), int(y)) for x, y in points}
    pts.discard((0, 0))
    for x, y in pts:
        if x < 0 or y < 0:
            raise ValueError("points must lie in N^2")
    if not pts:
        return GenSet(frozenset(), True)
    box = (max(x for x, _ in pts), max(y for _, y in pts))
    grid = semigroup_grid(pts, box)
    keep = [p for p in sorted(pts) if not _redundant_in_grid(p, grid)]
    return GenSet.of(keep, minimal=True)


# -- generic small-dimension membership (used for N^3) -------------------


def _member_nd(target: tuple[int, ...], gens: Sequence[tuple[int, ...]], memo: dict) -> bool:
    zero = tuple(0 for _ in target)
    memo.setdefault(zero, True)
    stack = [target]
    while stack:
        v = stack[-1]
        if v in memo:
            stack.pop()
            continue
        ok = False
        pending = []
        for g in gens:
            w = tuple(a - b for a, b in zip(v, g))
            if any(c < 0 for c in w):
                continue
            r = memo.get(w)
            if r is True:
                ok = True
                break
            if r is None:
                pending.append(w)
        if ok:
            memo[v] = True
            stack.pop()
        elif pending:
            stack.extend(pending)
        else:
            memo[v] = False
            stack.pop()
    return memo[target]


def minimalize_nd(points: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    pts = sorted(p for p in {tuple(int(c) for c in p) for p in points} if any(p))
    memo: dict = {}
    gens = pts
    keep = []
    for p in pts:
        redundant = False
        for g in gens:
            if g == p:
                continue
            w = tuple(a - b for a, b in zip(p, g))
            if any(c < 0 for c in w) or not any(w):
                continue
            if _member_nd(w, gens, memo):
                redundant = True
                break
        if not redundant:
            keep.append(p)
    return keep


# -- Hilbert bases -----------------------------------------------------


def hilbert_basis_2d(cone: Cone2) -> GenSet:
    """Minimal generating system of cone ∩ N^2.

    Enumerates the half-open fundamental parallelogram spanned by the two
    primitive ray vectors, adds the rays, and minimalizes.
    """
    if cone.degenerate:
        raise ValueError("degenerate cone: handled by the ray-segment machinery")
    u, v = cone.ray_lo, cone.ray_hi
    det = u[0] * v[1] - u[1] * v[0]
    candidates = {u, v}
    for x in range(u[0] + v[0] + 1):
        for y in range(u[1] + v[1] + 1):
            if x == 0 and y == 0:
                continue
            s_num = x * v[1] - y * v[0]
            t_num = y * u[0] - x * u[1]
            if 0 <= s_num < det and 0 <= t_num < det:
                candidates.add((x, y))
    return minimalize(candidates)


_DET_LIMIT = 6_000_000


def _parallelepiped_points_3(gens: list[IntVec3]) -> list[IntVec3]:
    a, b, c = gens
    m = np.array([a, b, c], dtype=np.int64).T
    det = (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )
    det = int(det)
    if det == 0:
        raise ValueError("simplex generators are linearly dependent")
    adj = np.array(
        [
            [m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1],
             m[0, 2] * m[2, 1] - m[0, 1] * m[2, 2],
             m[0, 1] * m[1, 2] - m[0, 2] * m[1, 1]],
            [m[1, 2] * m[2, 0] - m[1, 0] * m[2, 2],
             m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0],
             m[0, 2] * m[1, 0] - m[0, 0] * m[1, 2]],
            [m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0],
             m[0, 1] * m[2, 0] - m[0, 0] * m[2, 1],
             m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]],
        ],
        dtype=np.int64,
    )
    if det < 0:
        det, adj = -det, -adj
    if det > _DET_LIMIT:
        raise ValueError("cone too large for exact parallelepiped enumeration")
    bx, by, bz = (int(a[i] + b[i] + c[i]) for i in range(3))
    out: list[IntVec3] = []
    ys, zs = np.meshgrid(np.arange(by + 1, dtype=np.int64),
                         np.arange(bz + 1, dtype=np.int64), indexing="ij")
    for x in range(bx + 1):
        q0 = adj[0, 0] * x + adj[0, 1] * ys + adj[0, 2] * zs
        q1 = adj[1, 0] * x + adj[1, 1] * ys + adj[1, 2] * zs
        q2 = adj[2, 0] * x + adj[2, 1] * ys + adj[2, 2] * zs
        mask = (
            (q0 >= 0) & (q0 < det)
            & (q1 >= 0) & (q1 < det)
            & (q2 >= 0) & (q2 < det)
        )
        for y, z in zip(ys[mask].tolist(), zs[mask].tolist()):
            if x or y or z:
                out.append((x, int(y), int(z)))
    return out


def _parallelogram_points_3(gens: list[IntVec3]) -> list[IntVec3]:
    """Lattice points of the half-open parallelogram spanned by two
    independent integer vectors inside N^3 (a planar cone slice)."""
    a, b = gens
    pair = None
    for i, j in combinations(range(3), 2):
        d = a[i] * b[j] - a[j] * b[i]
        if d != 0:
            pair = (i, j, d)
            break
    if pair is None:
        raise ValueError("simplex generators are linearly dependent")
    i, j, d = pair
    k = ({0, 1, 2} - {i, j}).pop()
    box = tuple(a[t] + b[t] for t in range(3))
    out: list[IntVec3] = []
    for x in range(box[0] + 1):
        for y in range(box[1] + 1):
            for z in range(box[2] + 1):
                p = (x, y, z)
                if not any(p):
                    continue
                s_num = p[i] * b[j] - p[j] * b[i]
                t_num = a[i] * p[j] - a[j] * p[i]
                if d < 0:
                    s_num, t_num, dd = -s_num, -t_num, -d
                else:
                    dd = d
                if not (0 <= s_num < dd and 0 <= t_num < dd):
                    continue
                if s_num * a[k] + t_num * b[k] != p[k] * dd:
                    continue
                out.append(p)
    return out


def _hull_order(rays: list[IntVec3]) -> tuple[list[IntVec3], list[IntVec3]]:
    """Split rays into (hull rays in angular order, interior rays) using the
    exact cross-section by the plane x + y + z = 1."""
    proj = []
    for r in rays:
        s = sum(r)
        proj.append((Fraction(r[0], s), Fraction(r[1], s)))
    order = sorted(range(len(rays)), key=lambda i: proj[i])
    pts = [proj[i] for i in order]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(indices):
        out = []
        for idx in indices:
            while len(out) >= 2 and cross(proj[out[-2]], proj[out[-1]], proj[idx]) <= 0:
                out.pop()
            out.append(idx)
        return out

    lower = chain(order)
    upper = chain(list(reversed(order)))
    hull_idx = lower[:-1] + upper[:-1]
    if len(hull_idx) < 2 and len(set(pts)) >= 2:
        # all projections collinear: keep the two extremes
        hull_idx = [order[0], order[-1]]
    hull = [rays[i] for i in hull_idx]
    interior = [rays[i] for i in set(range(len(rays))) - set(hull_idx)]
    return hull, interior


def hilbert_basis_3d(rays: Iterable[IntVec3]) -> GenSet3:
    """Minimal generating system of (pointed cone spanned by rays) ∩ N^3.

    Fan triangulation into simplicial subcones, fundamental parallelepiped
    enumeration per subcone, global minimalization at the end.
    """
    prim: list[IntVec3] = []
    seen = set()
    for r in rays:
        r = tuple(int(c) for c in r)
        if len(r) != 3 or not any(r):
            raise ValueError("rays must be nonzero integer triples")
        if any(c < 0 for c in r):
            raise ValueError("cone not pointed")
        g = math.gcd(*(abs(c) for c in r))
        r = tuple(c // g for c in r)
        if r not in seen:
            seen.add(r)
            prim.append(r)
    if not prim:
        raise ValueError("no rays given")
    if len(prim) == 1:
        return GenSet3.of(prim, minimal=True)

    candidates: set[IntVec3] = set(prim)
    hull, _ = _hull_order(prim)
    if len(hull) == 2:
        candidates.update(_parallelogram_points_3(hull))
    else:
        anchor = hull[0]
        for i in range(1, len(hull) - 1):
            simplex = [anchor, hull[i], hull[i + 1]]
            candidates.update(_parallelepiped_points_3(simplex))
    return GenSet3.of(minimalize_nd(candidates), minimal=True)


def project_to_plane(g: GenSet3) -> GenSet:
    """Drop third coordinates, deduplicate, and minimalize."""
    flat = {(x, y) for x, y, _ in g.points}
    flat.discard((0, 0))
    return minimalize(flat)


# -- cone of a body ----------------------------------------------------


@dataclass(frozen=True)
class ConeData:
    """Cone2 of a body plus the exact ray-body intersection metadata."""

    kind: str  # "zero" | "point_body" | "full" | "cone" | "ray"
    cone: Optional[Cone2]
    hi: Optional[RayContact]
    lo: Optional[RayContact]
    single_point: Optional[QPoint] = None


def cone_of_body(body: ConvexBody2) -> ConeData:
    """Extremal rays of the cone over the body, with intersection metadata.

    Bodies that miss the open quadrant yield kind "zero" (their semigroup
    is {0}).  Rays with irrational slope cannot be represented by integer
    vectors and raise; finite-generation decisions work directly on the
    contact analysis instead.
    """
    ana: ConeAnalysis = analyze_body(body)
    if ana.kind == "zero":
        return ConeData("zero", None, None, None)
    if ana.kind == "full":
        return ConeData("full", Cone2((0, 1), (1, 0)), None, None)
    if ana.kind == "point_body":
        from .bodies import _contact  # single-point ray

        contact = _contact([ana.single_point])
        if contact.direction is None:
            raise ValueError("extremal ray has irrational slope")
        cone = Cone2(contact.direction, contact.direction, degenerate=True)
        return ConeData("point_body", cone, contact, contact, ana.single_point)
    if ana.kind == "ray":
        d = ana.hi.direction
        cone = Cone2(d, d, degenerate=True)
        return ConeData("ray", cone, ana.hi, ana.lo)
    if ana.hi.direction is None or ana.lo.direction is None:
        raise ValueError("extremal ray has irrational slope")
    cone = Cone2(ana.hi.direction, ana.lo.direction)
    return ConeData("cone", cone, ana.hi, ana.lo)
