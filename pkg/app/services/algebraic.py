# ABOUTME: Real algebraic numbers as (minimal polynomial, isolating interval) pairs
# ABOUTME: Exact sums and products through the composite algebra, with a resultant cross-check

import logging
from dataclasses import dataclass
from fractions import Fraction

from app.config import Settings, get_settings
from app.models.errors import InvalidInputError, SelectionError
from app.services.number_field import PROVED, UNPROVED
from app.utils.linalg import IncrementalEchelon
from app.utils.modular import is_irreducible
from app.utils.polynomials import Polynomial, RationalLike, interpolated_resultant, squarefree_part
from app.utils.roots import Interval, bisect_once, rational_roots, sturm_chain

logger = logging.getLogger(__name__)

_OPERATIONS = ("sum", "product")


@dataclass(frozen=True)
class AlgebraicNumber:
    """
    A real algebraic number.

    min_poly is integral with content 1 and positive leading coefficient;
    isolating holds exactly one of its real roots. minimality is "unproved"
    when min_poly could not be certified irreducible.
    """
    min_poly: Polynomial
    isolating: Interval
    minimality: str = PROVED

    @classmethod
    def from_polynomial(cls, p: Polynomial, isolating: Interval, minimality: str = PROVED) -> "AlgebraicNumber":
        if p.degree < 1:
            raise InvalidInputError("an algebraic number needs a polynomial of degree >= 1")
        integral = p.integral_primitive()
        if sturm_chain(integral).count_closed(isolating.lo, isolating.hi) != 1:
            raise InvalidInputError("interval does not isolate exactly one root")
        return cls(integral, isolating, minimality)

    @classmethod
    def rational(cls, q: RationalLike) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(Polynomial([-q.numerator, q.denominator]), Interval.point(q))

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise InvalidInputError("number is irrational")
        c0, c1 = self.min_poly.coefficients
        return -c0 / c1

    def refine(self, width: RationalLike) -> "AlgebraicNumber":
        if self.is_rational:
            return AlgebraicNumber(self.min_poly, Interval.point(self.rational_value()), self.minimality)
        base = sturm_chain(self.min_poly).base
        iv = self.isolating
        width = Fraction(width)
        if width <= 0:
            raise InvalidInputError("refinement width must be positive")
        while iv.width > width:
            iv = bisect_once(base, iv)
        return AlgebraicNumber(self.min_poly, iv, self.minimality)

    def halve(self) -> "AlgebraicNumber":
        if self.isolating.is_point:
            return self
        return AlgebraicNumber(self.min_poly, bisect_once(sturm_chain(self.min_poly).base, self.isolating), self.minimality)

    def approximate(self) -> float:
        return float(self.refine(Fraction(1, 2**60)).isolating.midpoint)

    def scale(self, r: RationalLike) -> "AlgebraicNumber":
        """r * self for a nonzero rational r."""
        r = Fraction(r)
        if r == 0:
            return AlgebraicNumber.rational(0)
        poly = self.min_poly.scale_variable(1 / r)
        iv = self.isolating * r
        return AlgebraicNumber(poly.integral_primitive(), iv, self.minimality)


def same_number(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """True when a and b denote the same real number."""
    if a.min_poly != b.min_poly or not a.isolating.overlaps(b.isolating):
        return False
    common = a.isolating.intersection(b.isolating)
    return sturm_chain(a.min_poly).count_closed(common.lo, common.hi) == 1


# --- composite algebra ------------------------------------------------------

def _shift(grid: list[list[Fraction]], f: list[Fraction], axis: int) -> list[list[Fraction]]:
    """Multiplies an element of Q[x,y]/(f(x), g(y)) by x (axis 0) or y (axis 1)."""
    m, n = len(grid), len(grid[0])
    out = [[Fraction(0)] * n for _ in range(m)]
    if axis == 0:
        for i in range(m):
            for j in range(n):
                c = grid[i][j]
                if not c:
                    continue
                if i + 1 < m:
                    out[i + 1][j] += c
                else:
                    for k in range(m):
                        out[k][j] -= f[k] * c
    else:
        for i in range(m):
            for j in range(n):
                c = grid[i][j]
                if not c:
                    continue
                if j + 1 < n:
                    out[i][j + 1] += c
                else:
                    for k in range(n):
                        out[i][k] -= f[k] * c
    return out


def _composite_relation(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Monic relation of least degree satisfied by x+y or x*y in Q[x,y]/(f, g)."""
    fm, gm = f.monic(), g.monic()
    m, n = fm.degree, gm.degree
    fc, gc = list(fm.coefficients), list(gm.coefficients)
    current = [[Fraction(0)] * n for _ in range(m)]
    current[0][0] = Fraction(1)
    echelon = IncrementalEchelon()
    for _ in range(m * n + 1):
        dependence = echelon.add([c for row in current for c in row])
        if dependence is not None:
            return Polynomial([-c for c in dependence] + [1])
        times_x = _shift(current, fc, 0)
        if op == "product":
            current = _shift(times_x, gc, 1)
        else:
            times_y = _shift(current, gc, 1)
            current = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(times_x, times_y)]
    raise AssertionError("composite algebra relation not found")


def _combine_intervals(a: Interval, b: Interval, op: str) -> Interval:
    return a * b if op == "product" else a + b


def isolated_factor(
    p: Polynomial,
    isolating: Interval,
    settings: Settings | None = None,
    known_irreducible: bool = False,
) -> AlgebraicNumber:
    """
    The root of p inside isolating, over the smallest factor of p that can be certified.

    Rational roots are split off first, so a rational value comes back with a
    linear polynomial. What remains is proved minimal when the caller already
    knows p is irreducible, when its degree is at most 3, or when a modular
    degree pattern proves it; otherwise it is flagged as unproved.
    """
    settings = settings or get_settings()
    integral = squarefree_part(p).integral_primitive()
    roots = rational_roots(integral)
    for r in roots:
        if isolating.contains(r):
            return AlgebraicNumber.rational(r)
    for r in roots:
        integral = integral // Polynomial([-r, 1])
    integral = integral.integral_primitive()
    if known_irreducible or integral.degree <= 3 or is_irreducible(integral, settings.irreducibility_primes):
        return AlgebraicNumber(integral, isolating, PROVED)
    logger.warning("minimality of a degree-%d polynomial is unproved", integral.degree)
    return AlgebraicNumber(integral, isolating, UNPROVED)


def min_poly_combine(
    a: AlgebraicNumber,
    b: AlgebraicNumber,
    op: str,
    settings: Settings | None = None,
) -> AlgebraicNumber:
    """
    Exact a+b or a*b.

    The polynomial comes from the first linear relation among powers of the
    combined value in the composite algebra. The value is then located by
    refining both operands until their combined enclosure holds exactly one
    root. Operands from a common field give a reducible relation; its
    rational roots are split off and the value is returned over the factor
    that holds it.

    Raises:
        InvalidInputError: For an unknown operation
        SelectionError: If no single root can be selected within the refinement cap
    """
    settings = settings or get_settings()
    if op not in _OPERATIONS:
        raise InvalidInputError(f"unknown combination: {op}")
    # Least-degree relation in Q[x,y]/(f, g)
    relation = squarefree_part(_composite_relation(a.min_poly, b.min_poly, op))
    if relation.degree == 1:
        return AlgebraicNumber.rational(-relation.coefficients[0])
    chain = sturm_chain(relation.integral_primitive())
    # Refine both operands until the combined enclosure holds a single root
    left, right = a, b
    for _ in range(settings.refinement_cap):
        enclosure = _combine_intervals(left.isolating, right.isolating, op)
        hits = chain.count_closed(enclosure.lo, enclosure.hi)
        if hits == 1:
            break
        if hits == 0:
            raise SelectionError("combined enclosure misses every root of the relation")
        left, right = left.halve(), right.halve()
    else:
        raise SelectionError(
            "could not isolate the combined value",
            details={"operation": op, "refinement_cap": settings.refinement_cap},
        )
    return isolated_factor(relation, enclosure, settings)


def resultant_combine(a: AlgebraicNumber, b: AlgebraicNumber, op: str) -> Polynomial:
    """
    Annihilating polynomial of a+b or a*b by resultant elimination.

    Sum: Res_y(g(y), f(x - y)). Product: Res_y(g(y), y^m f(x/y)). Kept as an
    independent cross-check of min_poly_combine.
    """
    if op not in _OPERATIONS:
        raise InvalidInputError(f"unknown combination: {op}")
    f, g = a.min_poly, b.min_poly
    m, n = f.degree, g.degree

    def family(x: Fraction) -> Polynomial:
        if op == "sum":
            return f.compose(Polynomial([x, -1]))
        return Polynomial(f.coefficient(m - j) * x ** (m - j) for j in range(m + 1))

    return interpolated_resultant(g, family, m * n)
