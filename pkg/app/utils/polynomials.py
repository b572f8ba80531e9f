# ABOUTME: Dense univariate polynomials with exact rational coefficients
# ABOUTME: Arithmetic, gcd, derivatives, squarefree parts, subresultant resultants and interpolation

from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from app.models.errors import InvalidInputError
from app.utils.linalg import determinant

RationalLike = int | Fraction


class Polynomial:
    """
    Immutable dense polynomial over Q.

    coefficients[i] is the coefficient of t^i. Trailing zeros are stripped on
    construction, so the zero polynomial has no coefficients and degree -1.
    """
    __slots__ = ("coefficients",)

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[RationalLike] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: RationalLike = 1) -> "Polynomial":
        return cls([0] * n + [c])

    @classmethod
    def identity(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else Fraction(0)

    def padded(self, length: int) -> tuple[Fraction, ...]:
        """Coefficient vector of exactly `length` entries (the polynomial must fit)."""
        if len(self.coefficients) > length:
            raise InvalidInputError(f"polynomial of degree {self.degree} does not fit in {length} coefficients")
        return self.coefficients + (Fraction(0),) * (length - len(self.coefficients))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coefficients]})"

    # --- ring operations -------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coefficients)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise InvalidInputError("negative polynomial power")
        result, base = Polynomial.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divrem(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Euclidean division: self = quotient * divisor + remainder, deg(remainder) < deg(divisor)."""
        if divisor.is_zero:
            raise InvalidInputError("division by the zero polynomial")
        remainder = list(self.coefficients)
        dd = divisor.degree
        lead = divisor.leading
        if len(remainder) - 1 < dd:
            return Polynomial(), self
        quotient = [Fraction(0)] * (len(remainder) - dd)
        for shift in range(len(remainder) - 1 - dd, -1, -1):
            coeff = remainder[shift + dd] / lead
            quotient[shift] = coeff
            if coeff:
                for j, b in enumerate(divisor.coefficients):
                    remainder[shift + j] -= coeff * b
        return Polynomial(quotient), Polynomial(remainder[:dd])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divrem(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divrem(other)[1]

    def __call__(self, x):
        """Horner evaluation; works for any value supporting * and + with Fractions."""
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    # --- derived polynomials ---------------------------------------------

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise InvalidInputError("the zero polynomial has no monic form")
        return self * (1 / self.leading)

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coefficients) if i > 0)

    def antiderivative_zero(self) -> "Polynomial":
        """The antiderivative vanishing at 0."""
        return Polynomial([0] + [c / (i + 1) for i, c in enumerate(self.coefficients)])

    def compose(self, inner: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for c in reversed(self.coefficients):
            acc = acc * inner + c
        return acc

    def scale_variable(self, r: RationalLike) -> "Polynomial":
        """The polynomial t -> p(r*t)."""
        r = Fraction(r)
        return Polynomial(c * r**i for i, c in enumerate(self.coefficients))

    def content_and_primitive(self) -> tuple[Fraction, list[int]]:
        """
        Split p = content * P with P integral, of content 1 and positive leading coefficient.

        Examples:
            9/4*t^2 + 6*t - 4 -> (1/4, [-16, 24, 9])
        """
        if self.is_zero:
            raise InvalidInputError("the zero polynomial has no primitive part")
        den = reduce(lcm, (c.denominator for c in self.coefficients), 1)
        ints = [int(c * den) for c in self.coefficients]
        g = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [c // g for c in ints]

    def integral_primitive(self) -> "Polynomial":
        return Polynomial(self.content_and_primitive()[1])

    def integer_coefficients(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coefficients):
            raise InvalidInputError("polynomial has non-integer coefficients")
        return [int(c) for c in self.coefficients]


def poly_arithmetic(p: Polynomial, q: Polynomial, op: str):
    """Dispatches add, sub, mul or divrem on two polynomials."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "divrem":
        return p.divrem(q)
    raise InvalidInputError(f"unknown polynomial operation: {op}")


def derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def antiderivative_zero(p: Polynomial) -> Polynomial:
    return p.antiderivative_zero()


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor over Q."""
    if p.is_zero and q.is_zero:
        raise InvalidInputError("gcd of two zero polynomials is undefined")
    a, b = p, q
    while not b.is_zero:
        a, b = b, a % b
        if not b.is_zero:
            b = b.monic()
    return a.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'), made monic."""
    if p.is_zero:
        raise InvalidInputError("the zero polynomial has no squarefree part")
    return (p // poly_gcd(p, p.derivative())).monic()


def is_squarefree(p: Polynomial) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


# --- resultants -----------------------------------------------------------

def _clear_denominators(p: Polynomial) -> tuple[list[int], int]:
    den = reduce(lcm, (c.denominator for c in p.coefficients), 1)
    return [int(c * den) for c in p.coefficients], den


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact division in subresultant sequence")
    return q


def _int_content(coeffs: Sequence[int]) -> int:
    return reduce(gcd, coeffs, 0)


def _pseudo_remainder(a: list[int], b: list[int]) -> list[int]:
    """lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    factor = lb**e
    return [c * factor for c in r]


def _integer_resultant(a: list[int], b: list[int]) -> Fraction:
    """Subresultant pseudo-remainder sequence over Z (Collins / Brown)."""
    da, db = len(a) - 1, len(b) - 1
    if db == 0:
        return Fraction(b[0] ** da)
    if da == 0:
        return Fraction(a[0] ** db)
    sign = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if da % 2 and db % 2:
            sign = -1
    ca, cb = _int_content(a), _int_content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    t = ca**db * cb**da
    g, h = 1, Fraction(1)
    while True:
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _pseudo_remainder(a, b)
        if not r:
            return Fraction(0)
        divisor = g * h**delta
        a, da = b, db
        b = [Fraction(c) / divisor for c in r]
        if any(c.denominator != 1 for c in b):
            raise ArithmeticError("inexact division in subresultant sequence")
        b = [int(c) for c in b]
        db = len(b) - 1
        g = a[-1]
        h = h ** (1 - delta) * Fraction(g) ** delta
        if db == 0:
            break
    h = h ** (1 - da) * Fraction(b[-1]) ** da
    return sign * t * h


def resultant(p: Polynomial, q: Polynomial) -> Fraction:
    """
    Resultant of two nonzero polynomials (the Sylvester determinant).

    Denominators are cleared first so the remainder sequence runs over Z.

    Examples:
        resultant(x^2 - 2, x^2 - 3) -> 1
        resultant(x - a, q) -> q(a)
    """
    if p.is_zero or q.is_zero:
        raise InvalidInputError("resultant of a zero polynomial")
    pa, dp = _clear_denominators(p)
    qa, dq = _clear_denominators(q)
    raw = _integer_resultant(pa, qa)
    return raw / (Fraction(dp) ** q.degree * Fraction(dq) ** p.degree)


def sylvester_matrix(p: Polynomial, q: Polynomial) -> list[list[Fraction]]:
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    high_p = list(reversed(p.coefficients))
    high_q = list(reversed(q.coefficients))
    for i in range(n):
        rows.append([Fraction(0)] * i + high_p + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + high_q + [Fraction(0)] * (size - n - 1 - i))
    return rows


def sylvester_resultant(p: Polynomial, q: Polynomial) -> Fraction:
    """Determinant of the Sylvester matrix, by elimination. Reference implementation."""
    if p.is_zero or q.is_zero:
        raise InvalidInputError("resultant of a zero polynomial")
    if p.degree == 0 and q.degree == 0:
        return Fraction(1)
    return determinant(sylvester_matrix(p, q))


def interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Polynomial:
    """Newton interpolation through distinct rational nodes."""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    n = len(xs)
    coeffs = [table[0]]
    for level in range(1, n):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            for i in range(n - level)
        ]
        coeffs.append(table[0])
    result = Polynomial()
    for k in range(n - 1, -1, -1):
        result = result * Polynomial([-xs[k], 1]) + coeffs[k]
    return result


def interpolated_resultant(
    p: Polynomial,
    family: Callable[[Fraction], Polynomial],
    degree: int,
) -> Polynomial:
    """
    The polynomial x -> resultant(p, family(x)), known to have degree <= `degree`.

    Sampled at x = 1, 2, ..., degree + 1 and interpolated exactly. Used to
    eliminate a variable without bivariate arithmetic.
    """
    samples = []
    for j in range(1, degree + 2):
        x = Fraction(j)
        samples.append((x, resultant(p, family(x))))
    return interpolate(samples)
