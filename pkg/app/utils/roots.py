# ABOUTME: Exact real root counting and isolation with Sturm sequences
# ABOUTME: Rational interval arithmetic for enclosing values of algebraic expressions

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil

from app.models.errors import InvalidInputError
from app.utils.polynomials import Polynomial, RationalLike, squarefree_part


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints."""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise InvalidInputError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: RationalLike) -> "Interval":
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: RationalLike) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other: "Interval") -> "Interval":
        if not self.overlaps(other):
            raise InvalidInputError("intervals do not overlap")
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction)):
            return Interval.point(other)
        return NotImplemented

    def __add__(self, other) -> "Interval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Interval":
        return (-self) + other

    def __mul__(self, other) -> "Interval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Interval":
        if n < 0:
            raise InvalidInputError("negative interval power")
        if n == 0:
            return Interval.point(1)
        lo_n, hi_n = self.lo**n, self.hi**n
        if n % 2 == 1:
            return Interval(lo_n, hi_n)
        if self.lo <= 0 <= self.hi:
            return Interval(0, max(lo_n, hi_n))
        return Interval(min(lo_n, hi_n), max(lo_n, hi_n))


def evaluate_interval(p: Polynomial, x: Interval) -> Interval:
    """Horner enclosure of p over x; shrinks to a point as x does."""
    acc = Interval.point(0)
    for c in reversed(p.coefficients):
        acc = acc * x + c
    return acc


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _variations(signs) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


@dataclass(frozen=True)
class SturmChain:
    """Sturm sequence of the squarefree part of a polynomial."""
    chain: tuple[Polynomial, ...]

    @classmethod
    def build(cls, p: Polynomial) -> "SturmChain":
        base = squarefree_part(p)
        chain = [base]
        if base.degree >= 1:
            a, b = base, base.derivative()
            chain.append(b)
            while True:
                r = -(a % b)
                if r.is_zero:
                    break
                r = r * (1 / abs(r.leading))
                chain.append(r)
                a, b = b, r
        return cls(tuple(chain))

    @property
    def base(self) -> Polynomial:
        return self.chain[0]

    def variations(self, x: RationalLike) -> int:
        return _variations(_sign(q(Fraction(x))) for q in self.chain)

    def variations_at_infinity(self, positive: bool = True) -> int:
        signs = []
        for q in self.chain:
            s = _sign(q.leading)
            if not positive and q.degree % 2 == 1:
                s = -s
            signs.append(s)
        return _variations(signs)

    def count(self, lo: RationalLike, hi: RationalLike) -> int:
        """Distinct roots in the half-open interval (lo, hi]."""
        return self.variations(lo) - self.variations(hi)

    def count_closed(self, lo: RationalLike, hi: RationalLike) -> int:
        """Distinct roots in [lo, hi]."""
        extra = 1 if self.base(Fraction(lo)) == 0 else 0
        return self.count(lo, hi) + extra

    def count_above(self, x: RationalLike) -> int:
        """Distinct roots in (x, +inf)."""
        return self.variations(x) - self.variations_at_infinity(True)

    def count_at_or_below(self, x: RationalLike) -> int:
        """Distinct roots in (-inf, x]."""
        return self.variations_at_infinity(False) - self.variations(x)

    def total(self) -> int:
        return self.variations_at_infinity(False) - self.variations_at_infinity(True)


@lru_cache(maxsize=256)
def sturm_chain(p: Polynomial) -> SturmChain:
    return SturmChain.build(p)


def count_roots(p: Polynomial, lo: RationalLike, hi: RationalLike) -> int:
    """Number of distinct real roots of p in [lo, hi]."""
    if p.is_zero:
        raise InvalidInputError("the zero polynomial has infinitely many roots")
    if Fraction(lo) > Fraction(hi):
        raise InvalidInputError("empty interval")
    return sturm_chain(p).count_closed(lo, hi)


def cauchy_bound(p: Polynomial) -> Fraction:
    """1 + max |a_i / a_d|; every complex root has smaller modulus."""
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coefficients[:-1]), default=Fraction(0))


def _split_point(p: Polynomial, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    step = (hi - lo) / 4
    while p(mid) == 0:
        mid += step
        step /= 2
    return mid


def bisect_once(p: Polynomial, iv: Interval) -> Interval:
    """
    Halves an interval holding exactly one simple root of p, keeping the root.

    A rational root met exactly collapses the interval to that point.
    """
    if iv.is_point:
        return iv
    lo_val = p(iv.lo)
    if lo_val == 0:
        return Interval.point(iv.lo)
    hi_val = p(iv.hi)
    if hi_val == 0:
        return Interval.point(iv.hi)
    mid = iv.midpoint
    mid_val = p(mid)
    if mid_val == 0:
        return Interval.point(mid)
    if _sign(lo_val) != _sign(mid_val):
        return Interval(iv.lo, mid)
    return Interval(mid, iv.hi)


def refine_isolating(p: Polynomial, iv: Interval, width: RationalLike) -> Interval:
    """Bisects a trusted isolating interval of squarefree p until it is no wider than `width`."""
    width = Fraction(width)
    if width <= 0:
        raise InvalidInputError("refinement width must be positive")
    while iv.width > width:
        iv = bisect_once(p, iv)
    return iv


def _separate(p: Polynomial, intervals: list[Interval]) -> list[Interval]:
    out = list(intervals)
    i = 0
    while i < len(out) - 1:
        if out[i].hi >= out[i + 1].lo:
            out[i] = bisect_once(p, out[i])
            out[i + 1] = bisect_once(p, out[i + 1])
            i = max(i - 1, 0)
        else:
            i += 1
    return out


def isolate_real_roots(p: Polynomial) -> list[Interval]:
    """
    Pairwise disjoint closed intervals, each holding exactly one distinct real root.

    Intervals are ordered by their roots. Endpoints are never roots unless the
    interval is a single rational point.

    Examples:
        t^2 - 2 -> two intervals, around -sqrt(2) and sqrt(2)
        (t - 1)^2 -> one interval around 1
    """
    if p.is_zero:
        raise InvalidInputError("the zero polynomial has infinitely many roots")
    chain = sturm_chain(p)
    sq = chain.base
    if sq.degree < 1:
        return []
    bound = cauchy_bound(sq)
    found: list[Interval] = []
    stack = [(-bound, bound, chain.count(-bound, bound))]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            found.append(Interval(lo, hi))
            continue
        mid = _split_point(sq, lo, hi)
        left = chain.count(lo, mid)
        stack.append((mid, hi, k - left))
        stack.append((lo, mid, left))
    found.sort(key=lambda iv: iv.lo)
    return _separate(sq, found)


def refine_root(p: Polynomial, iv: Interval, width: RationalLike) -> Interval:
    """
    Narrows an interval holding exactly one root of p.

    Raises:
        InvalidInputError: If the interval does not hold exactly one root
    """
    if count_roots(p, iv.lo, iv.hi) != 1:
        raise InvalidInputError(f"interval [{iv.lo}, {iv.hi}] does not isolate a single root")
    return refine_isolating(sturm_chain(p).base, iv, width)


def _rational_root_in(p: Polynomial, iv: Interval) -> Fraction | None:
    """The rational root of integral squarefree p isolated by iv, if that root is rational."""
    lead = abs(p.leading)
    while iv.width >= Fraction(1, 2 * lead):
        iv = bisect_once(p, iv)
    if iv.is_point:
        return iv.lo
    # Any rational root of an integral polynomial is a multiple of 1/lead.
    candidate = Fraction(ceil(iv.lo * lead), lead)
    if iv.contains(candidate) and p(candidate) == 0:
        return candidate
    return None


def rational_roots(p: Polynomial) -> list[Fraction]:
    """
    The distinct rational roots of p, ascending.

    Examples:
        t^3 - t -> [-1, 0, 1]
        9t^2 - 4 -> [-2/3, 2/3]
        t^2 - 2 -> []
    """
    sq = squarefree_part(p).integral_primitive()
    found = (_rational_root_in(sq, iv) for iv in isolate_real_roots(sq))
    return [r for r in found if r is not None]
