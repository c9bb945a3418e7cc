"""Exact number substrate: arbitrary-precision rationals, real quadratic
irrationals p + q*sqrt(D), primitive integer vectors, and the comparison
machinery every other module relies on.

All decisions (orderings, floors, squareness tests) are made symbolically.
No floating point is ever consulted for a result that matters.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rat = Fraction

RatLike = Union[int, Fraction]


class IncompatibleExtensionsError(ValueError):
    """Two quadratic values live in different extensions and cannot mix."""


_SMALL_PRIME_BOUND = 10_000


def _squarefree_core(n: int) -> tuple[int, int]:
    """Write n = s*s * d with d squarefree; return (s, d).

    Trial division handles everything our constructions produce; genuinely
    huge cores fall back to sympy's factorizer so the invariant never
    silently breaks.
    """
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, d = 1, 1
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    p = 2
    while p <= _SMALL_PRIME_BOUND and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            s *= r
        elif n < _SMALL_PRIME_BOUND * _SMALL_PRIME_BOUND:
            d *= n
        else:
            from sympy import factorint

            for q, e in factorint(n).items():
                s *= q ** (e // 2)
                if e % 2:
                    d *= q
    return s, d


def _as_fraction(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class QuadRat:
    """Exact element rat + surd*sqrt(disc) of a real quadratic extension.

    disc is a squarefree positive integer; disc == 1 encodes a plain
    rational, which embeds into every extension, so mixed arithmetic with
    rationals always works.  Construction normalizes: square parts are
    pulled out of the discriminant and a vanishing surd collapses to
    disc == 1.
    """

    rat: Fraction
    surd: Fraction
    disc: int

    def __init__(self, rat: RatLike = 0, surd: RatLike = 0, disc: int = 1):
        rat = _as_fraction(rat)
        surd = _as_fraction(surd)
        if disc < 1:
            raise ValueError("discriminant must be a positive integer")
        if surd == 0:
            disc = 1
        elif disc == 1:
            rat, surd = rat + surd, Fraction(0)
        else:
            s, d = _squarefree_core(disc)
            if d == 1:
                rat, surd, disc = rat + surd * s, Fraction(0), 1
            else:
                surd, disc = surd * s, d
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "surd", surd)
        object.__setattr__(self, "disc", disc)

    # -- predicates ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.surd == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.rat

    # -- coercion ------------------------------------------------------

    @staticmethod
    def of(x: "QuadLike") -> "QuadRat":
        if isinstance(x, QuadRat):
            return x
        return QuadRat(_as_fraction(x))

    def _join(self, other: "QuadLike") -> tuple["QuadRat", "QuadRat", int]:
        """Coerce both operands into a common extension or fail."""
        o = QuadRat.of(other)
        if self.disc == o.disc:
            return self, o, self.disc
        if self.is_rational:
            return self, o, o.disc
        if o.is_rational:
            return self, o, self.disc
        raise IncompatibleExtensionsError(
            f"incompatible extensions: sqrt({self.disc}) vs sqrt({o.disc})"
        )

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "QuadLike") -> "QuadRat":
        a, b, d = self._join(other)
        return QuadRat(a.rat + b.rat, a.surd + b.surd, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadRat":
        return QuadRat(-self.rat, -self.surd, self.disc)

    def __sub__(self, other: "QuadLike") -> "QuadRat":
        return self + (-QuadRat.of(other))

    def __rsub__(self, other: "QuadLike") -> "QuadRat":
        return QuadRat.of(other) + (-self)

    def __mul__(self, other: "QuadLike") -> "QuadRat":
        a, b, d = self._join(other)
        return QuadRat(
            a.rat * b.rat + a.surd * b.surd * d,
            a.rat * b.surd + a.surd * b.rat,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "QuadLike") -> "QuadRat":
        a, b, d = self._join(other)
        norm = b.rat * b.rat - b.surd * b.surd * d
        if norm == 0:
            if b.rat == 0 and b.surd == 0:
                raise ZeroDivisionError("division by zero")
            raise ZeroDivisionError("division by zero-norm element")
        conj = QuadRat(b.rat, -b.surd, d)
        prod = a * conj
        return QuadRat(prod.rat / norm, prod.surd / norm, d)

    def __rtruediv__(self, other: "QuadLike") -> "QuadRat":
        return QuadRat.of(other) / self

    # -- exact sign, order, floor ---------------------------------------

    def sign(self) -> int:
        """Exact sign, decided by squaring, never by floats."""
        p, q, d = self.rat, self.surd, self.disc
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # opposite signs: |p| vs |q|*sqrt(d), compare squares
        lhs, rhs = p * p, q * q * d
        if lhs == rhs:
            return 0
        if p > 0:  # q < 0
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def _cmp(self, other: "QuadLike") -> int:
        return (self - other).sign()

    def __lt__(self, other: "QuadLike") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "QuadLike") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "QuadLike") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "QuadLike") -> bool:
        return self._cmp(other) >= 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (QuadRat, Fraction, int)):
            a = self
            b = QuadRat.of(other)
            return a.rat == b.rat and a.surd == b.surd and a.disc == b.disc
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.rat)
        return hash((self.rat, self.surd, self.disc))

    def __bool__(self) -> bool:
        return self.rat != 0 or self.surd != 0

    def floor(self) -> int:
        """Largest integer <= value, found by isqrt localization plus an
        exact correction step."""
        p, q, d = self.rat, self.surd, self.disc
        if q == 0:
            return math.floor(p)
        t = math.isqrt(q.numerator * q.numerator * d)
        if q > 0:
            lo = p + Fraction(t, q.denominator)
        else:
            lo = p - Fraction(t + 1, q.denominator)
        n = math.floor(lo)
        while (self - (n + 1)).sign() >= 0:
            n += 1
        while (self - n).sign() < 0:
            n -= 1
        return n

    def ceil(self) -> int:
        return -(-self).floor()

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.rat)
        surd = f"sqrt({self.disc})" if self.surd == 1 else f"{self.surd}*sqrt({self.disc})"
        if self.surd < 0:
            surd = f"sqrt({self.disc})" if self.surd == -1 else f"{-self.surd}*sqrt({self.disc})"
            return f"{self.rat} - {surd}" if self.rat else f"-{surd}"
        return f"{self.rat} + {surd}" if self.rat else surd

    def __repr__(self) -> str:
        return f"QuadRat({self.rat!r}, {self.surd!r}, {self.disc})"

    def __float__(self) -> float:
        return float(self.rat) + float(self.surd) * math.sqrt(self.disc)


QuadLike = Union[QuadRat, Fraction, int]

QUAD_ZERO = QuadRat(0)
QUAD_ONE = QuadRat(1)


def quad_cmp(u: QuadRat, v: QuadRat) -> int:
    """Exact order of two values in a shared extension: -1, 0 or 1.

    Raises IncompatibleExtensionsError when both operands carry genuine
    surds over different discriminants.
    """
    return u._cmp(v)


def quad_cmp_any(u: QuadRat, v: QuadRat) -> int:
    """Exact order of two quadratic values from arbitrary extensions.

    Needed where one sequence of values hops between discriminants (for
    instance overlap heights at successive dilation indices).  Decides the
    sign of  c + a*sqrt(A) - b*sqrt(B)  by at most two squarings.
    """
    u, v = QuadRat.of(u), QuadRat.of(v)
    if u.disc == v.disc or u.is_rational or v.is_rational:
        return u._cmp(v)
    c = u.rat - v.rat
    a, A = u.surd, u.disc
    b, B = v.surd, v.disc
    # t = a*sqrt(A) - b*sqrt(B)
    if a >= 0 and b <= 0:
        t_sign = 1
    elif a <= 0 and b >= 0:
        t_sign = -1
    else:
        lhs, rhs = a * a * A, b * b * B
        same = 1 if a > 0 else -1
        t_sign = same * ((lhs > rhs) - (lhs < rhs))
    if c == 0:
        return t_sign
    c_sign = 1 if c > 0 else -1
    if c_sign == t_sign or t_sign == 0:
        return c_sign
    # |c| vs |t|: square once more; t^2 = a^2 A + b^2 B - 2ab sqrt(AB)
    t_sq_rat = a * a * A + b * b * B
    cross = QuadRat(c * c - t_sq_rat, 2 * a * b, A * B)
    s = cross.sign()  # sign of c^2 - t^2
    if s == 0:
        return 0
    return c_sign if s > 0 else t_sign


def rat_floor_sqrt(x: RatLike) -> int:
    """Largest integer n with n*n <= x, for rational x >= 0."""
    x = _as_fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    n = math.isqrt(x.numerator * x.denominator) // x.denominator
    while (n + 1) * (n + 1) <= x:
        n += 1
    while n * n > x:
        n -= 1
    return n


def rat_ceil_sqrt(x: RatLike) -> int:
    """Smallest integer n >= 0 with n*n >= x."""
    n = rat_floor_sqrt(x)
    return n if n * n == _as_fraction(x) else n + 1


def is_rational_square(x: RatLike) -> Optional[Fraction]:
    """The non-negative rational square root of x, if one exists."""
    x = _as_fraction(x)
    if x < 0:
        return None
    a = math.isqrt(x.numerator)
    b = math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def quad_sqrt(x: RatLike) -> QuadRat:
    """Exact square root of a non-negative rational as a QuadRat."""
    x = _as_fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return QUAD_ZERO
    s_num, d_num = _squarefree_core(x.numerator)
    s_den, d_den = _squarefree_core(x.denominator)
    # sqrt(n/m) = s_n sqrt(d_n) / (s_m sqrt(d_m)) = s_n sqrt(d_n d_m) / (s_m d_m)
    coeff = Fraction(s_num, s_den * d_den)
    return QuadRat(0, coeff, d_num * d_den)


def primitive(v: tuple[int, int]) -> tuple[int, int]:
    """Divide an integer vector by the gcd of its absolute coordinates."""
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no primitive representative")
    g = math.gcd(abs(x), abs(y))
    return (x // g, y // g)


def simplest_between(lo: QuadRat, hi: QuadRat) -> Fraction:
    """The rational with smallest denominator strictly between lo and hi.

    Walks the mediant tree with exact comparisons; both bounds are
    exclusive and may be irrational.  Requires lo < hi and hi > 0.
    """
    lo, hi = QuadRat.of(lo), QuadRat.of(hi)
    if quad_cmp_any(lo, hi) >= 0:
        raise ValueError("empty interval")
    if quad_cmp_any(hi, QUAD_ZERO) <= 0:
        raise ValueError("interval must contain positive numbers")
    if quad_cmp_any(lo, QUAD_ZERO) < 0:
        return Fraction(0)
    # integer part first
    n = lo.floor()
    if quad_cmp_any(QuadRat.of(n + 1), hi) < 0:
        return Fraction(n + 1)
    # now n <= lo < hi <= n+1: search within the unit interval
    a, b = Fraction(n), Fraction(n + 1)  # exclusive bracket
    for _ in range(100_000):
        mid = Fraction(a.numerator + b.numerator, a.denominator + b.denominator)
        m = QuadRat.of(mid)
        if quad_cmp_any(m, lo) <= 0:
            a = mid
        elif quad_cmp_any(m, hi) >= 0:
            b = mid
        else:
            return mid
    raise RuntimeError("mediant search failed to converge")


# -- text syntax -------------------------------------------------------

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_QUAD_RE = re.compile(
    r"^(?P<rat>[+-]?\d+(?:/\d+)?)?"
    r"(?:(?P<sign>[+-])?(?:(?P<coef>\d+(?:/\d+)?)\*)?sqrt\((?P<disc>\d+)\))?$"
)


def parse_rat(text: str) -> Fraction:
    """Parse `p` or `p/q` into an exact rational."""
    s = re.sub(r"\s+", "", str(text))
    if not _RAT_RE.match(s):
        raise ValueError(f"invalid rational literal: {text!r}")
    return Fraction(s)


def parse_quad(text: str) -> QuadRat:
    """Parse `p/q`, `p/q + r/s*sqrt(D)`, `sqrt(D)`, `-sqrt(D)`, etc."""
    s = re.sub(r"\s+", "", str(text))
    m = _QUAD_RE.match(s)
    if not m or (m.group("rat") is None and m.group("disc") is None):
        raise ValueError(f"invalid number literal: {text!r}")
    rat = Fraction(m.group("rat")) if m.group("rat") else Fraction(0)
    if m.group("disc") is None:
        return QuadRat(rat)
    disc = int(m.group("disc"))
    if disc < 1:
        raise ValueError(f"invalid discriminant in {text!r}")
    coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
    if m.group("rat") and m.group("sign") is None:
        raise ValueError(f"missing sign between parts in {text!r}")
    if m.group("sign") == "-":
        coef = -coef
    return QuadRat(rat, coef, disc)
