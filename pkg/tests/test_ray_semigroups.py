import random
from fractions import Fraction

import pytest

from cbsg.bodies import RaySegment
from cbsg.exactnum import QuadRat
from cbsg.lattice_cone import GenSet3, hilbert_basis_3d, project_to_plane
from cbsg.ray_semigroups import (
    NumSG,
    general_inequality_witness,
    interval_semigroup_gens,
    modular_inequality_holds,
    numerical_members,
    segment_semigroup,
)


def brute_interval_members(alpha: QuadRat, beta: QuadRat, bound: int) -> set[int]:
    out = set()
    i = 1
    while True:
        lo = (alpha * i).ceil()
        if lo > bound:
            break
        hi = (beta * i).floor()
        out.update(t for t in range(max(lo, 0), min(hi, bound) + 1))
        i += 1
    out.discard(0)
    return out


def test_interval_examples():
    assert set(interval_semigroup_gens(Fraction(7, 3), Fraction(7, 2))) == {3, 5, 7}
    assert set(interval_semigroup_gens(QuadRat(0, 1, 2), QuadRat(2))) == {2, 3}
    assert set(interval_semigroup_gens(Fraction(1), Fraction(2))) == {1}
    assert set(interval_semigroup_gens(Fraction(0), Fraction(1, 7))) == {1}


def test_interval_errors():
    with pytest.raises(ValueError):
        interval_semigroup_gens(Fraction(-1), Fraction(1))
    with pytest.raises(ValueError):
        interval_semigroup_gens(Fraction(2), Fraction(2))


def test_interval_against_brute_force():
    rng = random.Random(321)
    cases = []
    while len(cases) < 40:
        a = Fraction(rng.randint(1, 40), rng.randint(1, 12))
        b = a + Fraction(rng.randint(1, 30), rng.randint(1, 12))
        cases.append((QuadRat(a), QuadRat(b)))
    while len(cases) < 50:
        d = rng.choice([2, 3, 5, 7])
        a = QuadRat(Fraction(rng.randint(0, 9)), Fraction(rng.randint(1, 5), 3), d)
        b = a + Fraction(rng.randint(1, 9), 4)
        cases.append((a, b))
    for a, b in cases:
        gens = interval_semigroup_gens(a, b)
        expected = brute_interval_members(a, b, 200)
        got = set(numerical_members(gens, 200)) - {0}
        assert got == expected, (str(a), str(b))
        # minimality: no generator is a sum of two members
        mem = sorted(expected)
        mem_set = set(mem)
        for g in gens:
            assert not any(u in mem_set and g - u in mem_set for u in range(1, g))


def test_proportionally_modular_characterization():
    rng = random.Random(555)
    count = 0
    while count < 20:
        b = rng.randint(3, 30)
        a = rng.randint(2, b)
        c = rng.randint(1, a - 1)
        if a <= c:
            continue
        count += 1
        alpha = Fraction(b, a)
        beta = Fraction(b, a - c)
        gens = interval_semigroup_gens(alpha, beta)
        generated = set(numerical_members(gens, 200))
        modular = {x for x in range(201) if (a * x) % b <= c * x}
        assert generated == modular, (a, b, c)


def test_modular_inequality_matches_interval_membership():
    rng = random.Random(99)
    for _ in range(30):
        a = Fraction(rng.randint(1, 30), rng.randint(1, 9))
        b = a + Fraction(rng.randint(1, 20), rng.randint(1, 9))
        members = brute_interval_members(QuadRat(a), QuadRat(b), 200)
        for t in range(1, 201):
            assert modular_inequality_holds(t, a, b) == (t in members), (a, b, t)


def test_modular_inequality_examples():
    dP, dQ = Fraction(7, 3), Fraction(7, 2)
    assert modular_inequality_holds(dP, dP, dQ)
    assert not modular_inequality_holds(4, dP, dQ)
    assert modular_inequality_holds(5, dP, dQ)
    with pytest.raises(ValueError):
        modular_inequality_holds(1, Fraction(2), Fraction(2))


def test_segment_semigroup_examples():
    seg = RaySegment((1, 0), QuadRat(0, 1, 2), QuadRat(2))
    assert segment_semigroup(seg).points == frozenset({(2, 0), (3, 0)})
    seg = RaySegment((1, 1), QuadRat(Fraction(1, 2)), QuadRat(Fraction(3, 4)))
    assert segment_semigroup(seg).points == frozenset({(1, 1)})
    with pytest.raises(ValueError):
        RaySegment((4, 3), QuadRat(8), QuadRat(8))


def test_segment_semigroup_agrees_with_lifted_cone():
    rng = random.Random(2024)
    for _ in range(12):
        dx, dy = rng.choice([(1, 0), (1, 1), (2, 1), (3, 2), (1, 4)])
        alpha = Fraction(rng.randint(1, 9), rng.randint(1, 6))
        beta = alpha + Fraction(rng.randint(1, 6), rng.randint(1, 6))
        seg = RaySegment((dx, dy), QuadRat(alpha), QuadRat(beta))
        direct = segment_semigroup(seg)

        # lifted route: cone over (P, 1), (Q, 1) in N^3, projected back
        p = (alpha * dx, alpha * dy)
        q = (beta * dx, beta * dy)
        den = (p[0].denominator if p[0] else 1)
        from math import lcm

        dp = lcm(p[0].denominator, p[1].denominator)
        dq = lcm(q[0].denominator, q[1].denominator)
        rp = (int(p[0] * dp), int(p[1] * dp), dp)
        rq = (int(q[0] * dq), int(q[1] * dq), dq)
        lifted = project_to_plane(hilbert_basis_3d([rp, rq]))
        assert lifted.points == direct.points, (seg, sorted(lifted.points))


def test_general_witness_point_case():
    a, b = general_inequality_witness(QuadRat(10), QuadRat(5))
    assert (a, b) == (QuadRat(2), QuadRat(20))
    # 2*10 mod 20 = 0 <= 10
    with pytest.raises(ValueError, match="not a member"):
        general_inequality_witness(QuadRat(12), QuadRat(5))


def test_general_witness_segment_case():
    a, b = general_inequality_witness(5, Fraction(7, 3), Fraction(7, 2))
    assert (a, b) == (QuadRat(3), QuadRat(7))
    with pytest.raises(ValueError, match="not a member"):
        general_inequality_witness(4, Fraction(7, 3), Fraction(7, 2))


def test_general_witness_zero():
    assert general_inequality_witness(0, Fraction(1)) == (QuadRat(2), QuadRat(3))
