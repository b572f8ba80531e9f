# ABOUTME: Number fields Q[t]/(m) and their elements in the power basis
# ABOUTME: Field construction, element arithmetic, minimal polynomials and the volume certificate

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from app.config import Settings, get_settings
from app.models.errors import ComputationError, InvalidInputError
from app.utils.linalg import IncrementalEchelon, determinant
from app.utils.modular import is_irreducible
from app.utils.polynomials import Polynomial, RationalLike, poly_gcd
from app.utils.roots import Interval, evaluate_interval, isolate_real_roots, refine_isolating

logger = logging.getLogger(__name__)

PROVED = "proved"
UNPROVED = "unproved"


@dataclass(frozen=True)
class NumberField:
    """
    Q[t]/(defining_poly) with defining_poly monic and squarefree.

    real_roots holds the isolating intervals of the real embeddings, ordered
    by value. irreducibility records whether the defining polynomial was
    certified irreducible.
    """
    defining_poly: Polynomial
    totally_real: bool
    galois_attested: bool
    irreducibility: str
    real_roots: tuple[Interval, ...] = dc_field(default=(), compare=False, repr=False)

    @property
    def degree(self) -> int:
        return self.defining_poly.degree

    @property
    def irreducibility_proved(self) -> bool:
        return self.irreducibility == PROVED

    def element(self, coords) -> "FieldElement":
        """The class of sum(coords[i] * t^i); longer vectors are reduced mod the defining polynomial."""
        poly = coords if isinstance(coords, Polynomial) else Polynomial(coords)
        return FieldElement(self, (poly % self.defining_poly).padded(self.degree))

    def scalar(self, c: RationalLike) -> "FieldElement":
        return self.element([c])

    def one(self) -> "FieldElement":
        return self.scalar(1)

    def generator(self) -> "FieldElement":
        return self.element([0, 1])


@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.field.degree:
            raise InvalidInputError(
                f"element needs {self.field.degree} coordinates, got {len(self.coords)}"
            )

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def _check(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise InvalidInputError("elements belong to different fields")
        return other

    def __add__(self, other) -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other) -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "FieldElement":
        return (-self) + other

    def __mul__(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.field.element(self.to_polynomial() * other.to_polynomial())

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            raise InvalidInputError("negative powers are not supported")
        result, base = self.field.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def build_field(
    m: Polynomial,
    *,
    totally_real: bool | None = None,
    galois_attested: bool = False,
    irreducibility: str | None = None,
    settings: Settings | None = None,
) -> NumberField:
    """Assembles a field, computing whatever flags were not supplied."""
    settings = settings or get_settings()
    roots = tuple(isolate_real_roots(m))
    if totally_real is None:
        totally_real = len(roots) == m.degree
    if irreducibility is None:
        irreducibility = PROVED if is_irreducible(m, settings.irreducibility_primes) else UNPROVED
    return NumberField(m, totally_real, galois_attested, irreducibility, roots)


def make_field(
    m: Polynomial,
    require_totally_real: bool = False,
    settings: Settings | None = None,
) -> NumberField:
    """
    Build Q[t]/(m) from a user-supplied defining polynomial.

    Args:
        m: Monic squarefree polynomial of degree >= 1
        require_totally_real: Reject fields with non-real embeddings
        settings: Engine settings (irreducibility prime count)

    Returns:
        NumberField with totally_real and irreducibility computed. Only
        irreducible fields of degree <= 2 are attested Galois.

    Raises:
        InvalidInputError: On non-monic, non-squarefree or constant m, or a
            non-totally-real field when one is required
    """
    if m.degree < 1:
        raise InvalidInputError("defining polynomial must have degree >= 1")
    if m.leading != 1:
        raise InvalidInputError("defining polynomial must be monic")
    if poly_gcd(m, m.derivative()).degree > 0:
        raise InvalidInputError("defining polynomial must be squarefree")
    nf = build_field(m, settings=settings)
    if nf.irreducibility_proved and nf.degree <= 2:
        nf = NumberField(m, nf.totally_real, True, nf.irreducibility, nf.real_roots)
    if require_totally_real and not nf.totally_real:
        raise InvalidInputError(
            "field is not totally real",
            details={"real_embeddings": len(nf.real_roots), "degree": nf.degree},
        )
    logger.info(
        "field of degree %d: totally_real=%s irreducibility=%s",
        nf.degree, nf.totally_real, nf.irreducibility,
    )
    return nf


def element_arithmetic(a: FieldElement, b, op: str) -> FieldElement:
    """add, sub and mul take two elements; pow takes an element and a non-negative int."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        if not isinstance(b, int):
            raise InvalidInputError("pow needs an integer exponent")
        return a**b
    raise InvalidInputError(f"unknown field operation: {op}")


def evaluate_polynomial(p: Polynomial, a: FieldElement) -> FieldElement:
    acc = a.field.scalar(0)
    for c in reversed(p.coefficients):
        acc = acc * a + c
    return acc


def min_poly_of_element(a: FieldElement) -> Polynomial:
    """
    Monic minimal polynomial of a over Q.

    Found as the first linear relation among 1, a, a^2, ...; in a field the
    first relation is the minimal one, so its degree divides the field degree.

    Examples:
        a = t in Q[t]/(t^2 - 2) -> t^2 - 2
        a = 1/2 -> t - 1/2
    """
    echelon = IncrementalEchelon()
    power = a.field.one()
    for _ in range(a.field.degree + 1):
        dependence = echelon.add(power.coords)
        if dependence is not None:
            return Polynomial([-c for c in dependence] + [1])
        power = power * a
    raise ComputationError("no linear relation among the first powers of the element")


def is_primitive(a: FieldElement) -> bool:
    return min_poly_of_element(a).degree == a.field.degree


@dataclass(frozen=True)
class CertificateMatrix:
    """Column n holds the coordinates of M_alpha(alpha)^n in the basis 1, alpha, ..., alpha^(d-1)."""
    columns: tuple[tuple[Fraction, ...], ...]
    det: Fraction

    @property
    def nonzero(self) -> bool:
        return self.det != 0


def certificate_det(alpha: FieldElement) -> CertificateMatrix:
    """
    The certificate that M_alpha(alpha) generates the field.

    With m = min poly of alpha and M its antiderivative vanishing at 0, the
    powers (M mod m)^n for n < d are taken mod m; their determinant is
    nonzero exactly when M(alpha) is primitive.

    Raises:
        InvalidInputError: If alpha is not primitive
    """
    d = alpha.field.degree
    m = min_poly_of_element(alpha)
    if m.degree != d:
        raise InvalidInputError("certificate needs a primitive element")
    reduced = m.antiderivative_zero() % m
    power = Polynomial.constant(1)
    columns = []
    for _ in range(d):
        columns.append(power.padded(d))
        power = (power * reduced) % m
    det = determinant(columns)
    return CertificateMatrix(tuple(columns), det)


def numeric_embeddings(a: FieldElement, precision: RationalLike, settings: Settings | None = None) -> list[Interval]:
    """
    Enclosures of the real embeddings of a, ordered like the field's roots.

    Raises:
        InvalidInputError: If the field is not totally real or precision <= 0
        ComputationError: If an enclosure cannot be narrowed within the refinement cap
    """
    settings = settings or get_settings()
    precision = Fraction(precision)
    if precision <= 0:
        raise InvalidInputError("precision must be positive")
    nf = a.field
    if not nf.totally_real:
        raise InvalidInputError("numeric embeddings need a totally real field")
    poly = a.to_polynomial()
    out = []
    for root in nf.real_roots:
        width = precision
        for _ in range(settings.refinement_cap):
            root = refine_isolating(nf.defining_poly, root, width)
            image = evaluate_interval(poly, root)
            if image.width <= precision:
                out.append(image)
                break
            width /= 16
        else:
            raise ComputationError("embedding enclosure did not reach the requested precision")
    return out
