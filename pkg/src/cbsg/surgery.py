"""Transformations of minimal generating sets: replacing the generators a
semigroup carries on one extremal ray, deleting single elements or finite
sets while staying a semigroup, and the norm bound 3^l (2k-1) M for the
generators that survive the whole pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bodies import IntVec2
from .exactnum import primitive
from .lattice_cone import GenSet, member_of_generated, minimalize


class NotRemovableError(ValueError):
    """Deleting the requested set does not leave a semigroup."""


@dataclass(frozen=True)
class RaySurgerySpec:
    """Replacement data for one extremal ray.

    g1 is the minimal generator spanning the lattice points of the ray;
    s_list holds the new generators of the semigroup to install on the ray,
    each a positive multiple of g1, with strictly increasing multiples.
    """

    ray: IntVec2
    g1: IntVec2
    s_list: tuple[IntVec2, ...]

    def multiples(self) -> list[int]:
        out = []
        gx, gy = self.g1
        for s in self.s_list:
            lam = s[0] // gx if gx else s[1] // gy
            if (lam * gx, lam * gy) != tuple(s) or lam < 1:
                raise ValueError(f"{s} is not a positive multiple of {self.g1}")
            out.append(lam)
        if any(b <= a for a, b in zip(out, out[1:])):
            raise ValueError("multiples must be strictly increasing")
        if not out:
            raise ValueError("s_list must not be empty")
        return out


def _on_ray(p: IntVec2, ray: IntVec2) -> bool:
    return p[0] * ray[1] == p[1] * ray[0]


def replace_ray_gens(f_min_gens: GenSet, spec: RaySurgerySpec) -> GenSet:
    """Generators of the semigroup that agrees with <f_min_gens> off the ray
    and equals <s_list> on it, minimalized.

    The construction keeps every old generator except g1, installs the
    s_list, and patches each off-ray generator g with g + j*g1 for
    j = 1 .. lambda_t - 1 so that every old combination missing at most
    lambda_t - 1 copies of g1 stays reachable.
    """
    if primitive(spec.ray) != tuple(spec.ray):
        raise ValueError("ray direction must be primitive")
    if tuple(spec.g1) not in f_min_gens.points:
        raise ValueError(f"{spec.g1} is not a generator of the semigroup")
    if not _on_ray(spec.g1, spec.ray) or primitive(spec.g1) != tuple(spec.ray):
        raise ValueError("g1 must generate the lattice points of the ray")
    others = [p for p in f_min_gens.points if p != tuple(spec.g1)]
    if any(_on_ray(p, spec.ray) for p in others):
        raise ValueError("the ray carries more than one minimal generator")
    lams = spec.multiples()
    lam_t = lams[-1]
    gx, gy = spec.g1
    candidates = set(tuple(s) for s in spec.s_list)
    candidates.update(others)
    for px, py in others:
        for j in range(1, lam_t):
            candidates.add((px + j * gx, py + j * gy))
    return minimalize(candidates)


def remove_element(f_min_gens: GenSet, a: IntVec2) -> GenSet:
    """Minimal generators of the semigroup minus the single point a.

    Only a minimal generator can be deleted; the result is generated by the
    remaining generators, their translates by a, and 2a, 3a.
    """
    a = (int(a[0]), int(a[1]))
    if a not in f_min_gens.points:
        raise NotRemovableError(
            f"{a} is not a minimal generator: removing it does not leave a semigroup"
        )
    gens = f_min_gens if f_min_gens.minimal else minimalize(f_min_gens.points)
    if a not in gens.points:
        raise NotRemovableError(
            f"{a} is not a minimal generator: removing it does not leave a semigroup"
        )
    others = [p for p in gens.points if p != a]
    candidates = set(others)
    candidates.update((p[0] + a[0], p[1] + a[1]) for p in others)
    candidates.add((2 * a[0], 2 * a[1]))
    candidates.add((3 * a[0], 3 * a[1]))
    return minimalize(candidates)


def remove_finite_set(f_min_gens: GenSet, points: set[IntVec2] | list[IntVec2]) -> GenSet:
    """Minimal generators of the semigroup minus a finite set of points.

    Deletes lexicographically smallest removable points first, one at a
    time, re-minimalizing after each step.  Points outside the semigroup do
    not affect the set difference and are dropped up front.
    """
    current = f_min_gens if f_min_gens.minimal else minimalize(f_min_gens.points)
    remaining = {(int(x), int(y)) for x, y in points}
    remaining = {p for p in remaining if member_of_generated(p, current)}
    while remaining:
        removable = sorted(remaining & current.points)
        if not removable:
            raise NotRemovableError(
                "the set is not removable (the remaining point set is not a semigroup)"
            )
        a = removable[0]
        current = remove_element(current, a)
        remaining.discard(a)
    return current


@dataclass(frozen=True)
class BoundInputs:
    """Inputs of the generator norm bound: the largest 1-norm among the cone
    generators (M), the largest ray multiple installed by surgery (k), and
    the number of interior points deleted afterwards (l)."""

    M: int
    k: int
    l: int

    def __post_init__(self):
        if self.M < 1 or self.k < 1 or self.l < 0:
            raise ValueError("need M >= 1, k >= 1, l >= 0")


def generator_norm_bound(b: BoundInputs) -> int:
    """Exact value of 3^l * (2k - 1) * M."""
    return 3 ** b.l * (2 * b.k - 1) * b.M
