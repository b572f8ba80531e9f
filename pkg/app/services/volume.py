# ABOUTME: Exact volumes of the tautological class on the projective-bundle construction
# ABOUTME: Nef threshold, t0 choice, exact integral, primitive-element search, scaling and products

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import product
from math import factorial, gcd, isqrt

from app.config import Settings, get_settings
from app.models.errors import ComputationError, InvalidInputError, SearchExhaustedError, SelectionError
from app.services.algebraic import AlgebraicNumber, isolated_factor, min_poly_combine, same_number
from app.services.catalog import period_field, smallest_period_conductor
from app.services.number_field import (
    PROVED,
    CertificateMatrix,
    FieldElement,
    NumberField,
    build_field,
    certificate_det,
    evaluate_polynomial,
    min_poly_of_element,
)
from app.services.oracle import numeric_value
from app.utils.polynomials import Polynomial, interpolated_resultant, squarefree_part
from app.utils.roots import Interval, evaluate_interval, isolate_real_roots, sturm_chain

logger = logging.getLogger(__name__)


class Normalization(str, Enum):
    RAW_INTEGRAL = "raw_integral"
    GEOMETRIC = "geometric"


@dataclass(frozen=True)
class ConstructionInput:
    field: NumberField
    alpha: FieldElement
    t0: int | None = None
    d0: int = 1
    normalization: Normalization = Normalization.RAW_INTEGRAL


@dataclass(frozen=True)
class VolumeConstruction:
    """Everything one run of the construction produced, with the resolved t0."""
    input: ConstructionInput
    t0: int
    beta: AlgebraicNumber
    m_alpha: Polynomial
    M_alpha: Polynomial
    volume: AlgebraicNumber
    normalization_constant: Fraction
    numeric_value: str
    numeric_error_bound: Fraction

    @property
    def field(self) -> NumberField:
        return self.input.field

    @property
    def volume_degree(self) -> int:
        return self.volume.degree

    @property
    def ambient_dimension(self) -> int:
        return self.field.degree + 1

    @property
    def degree_equals_field_degree(self) -> bool:
        """Only claimed when both the field and the volume polynomial are certified irreducible."""
        if not self.field.irreducibility_proved or self.volume.minimality != PROVED:
            return False
        return self.volume_degree == self.field.degree

    @property
    def nu_upper_bound(self) -> int:
        return nu_upper_bound(self.volume, self.ambient_dimension)


@dataclass(frozen=True)
class SearchOutcome:
    element: FieldElement
    examined: int
    rejected: dict[str, int]
    certificate: CertificateMatrix


@dataclass(frozen=True)
class ScalingCheck:
    k: int
    factor: Fraction
    base: VolumeConstruction
    scaled: VolumeConstruction
    identical: bool


@dataclass(frozen=True)
class KunnethProduct:
    operands: tuple[tuple[AlgebraicNumber, int], ...]
    volume: AlgebraicNumber
    ambient_dimension: int
    constructions: tuple[VolumeConstruction, ...] = ()

    @property
    def volume_degree(self) -> int:
        return self.volume.degree

    @property
    def nu_upper_bound(self) -> int:
        return nu_upper_bound(self.volume, self.ambient_dimension)


def nu_upper_bound(volume: AlgebraicNumber, ambient_dimension: int) -> int:
    """1 for positive integers, 2 for other positive rationals, else the ambient dimension."""
    if volume.is_rational:
        value = volume.rational_value()
        if value > 0:
            return 1 if value.denominator == 1 else 2
    return ambient_dimension


def _require_totally_real(alpha: FieldElement) -> None:
    if not alpha.field.totally_real:
        raise InvalidInputError("the construction needs a totally real field")


def volume_polynomial(alpha: FieldElement) -> Polynomial:
    """
    m_alpha, the volume polynomial of the nef slice up to the factor d0 * d!.

    Raises:
        InvalidInputError: If alpha is not primitive or the field is not totally real
    """
    _require_totally_real(alpha)
    m = min_poly_of_element(alpha)
    if m.degree != alpha.field.degree:
        raise InvalidInputError(
            "alpha is not a primitive element",
            details={"min_poly_degree": m.degree, "field_degree": alpha.field.degree},
        )
    return m


def volume_function(alpha: FieldElement, t, d0: int = 1) -> Fraction:
    """vol_A(t*L0 - L) = d0 * d! * m_alpha(t) for t >= beta, and 0 below beta."""
    if d0 < 1:
        raise InvalidInputError("polarization degree must be positive")
    m = volume_polynomial(alpha)
    t = Fraction(t)
    if sturm_chain(m).count_above(t) > 0:
        return Fraction(0)
    return d0 * factorial(m.degree) * m(t)


def _threshold_from(m: Polynomial, minimality: str) -> AlgebraicNumber:
    roots = isolate_real_roots(m)
    if len(roots) != m.degree:
        raise InvalidInputError("volume polynomial has non-real roots")
    return isolated_factor(m, roots[-1], known_irreducible=minimality == PROVED)


def nef_threshold(alpha: FieldElement) -> AlgebraicNumber:
    """
    beta, the largest real root of m_alpha.

    Examples:
        alpha = sqrt(2) -> sqrt(2)
        alpha = -sqrt(2) -> sqrt(2)
    """
    m = volume_polynomial(alpha)
    return _threshold_from(m, alpha.field.irreducibility)


def _t0_is_valid(m: Polynomial, t0: int) -> bool:
    chain = sturm_chain(m)
    above_beta = m(Fraction(t0)) > 0 and chain.count_above(t0) == 0
    return above_beta and chain.count_at_or_below(-t0) == 0


def choose_t0(alpha: FieldElement) -> int:
    """
    Smallest positive integer t0 with t0 > beta and -t0 below every root of m_alpha.

    Examples:
        sqrt(2) -> 2
        3*sqrt(2) -> 5
    """
    m = volume_polynomial(alpha)
    t0 = 1
    while not _t0_is_valid(m, t0):
        t0 += 1
    return t0


def _check_user_t0(m: Polynomial, t0: int) -> None:
    if isinstance(t0, bool) or not isinstance(t0, int) or t0 < 1:
        raise InvalidInputError("t0 must be a positive integer", details={"t0": t0})
    chain = sturm_chain(m)
    if m(Fraction(t0)) <= 0 or chain.count_above(t0) != 0:
        raise InvalidInputError("t0 must exceed the nef threshold beta", details={"t0": t0})
    if chain.count_above(-t0) == 0:
        raise InvalidInputError("-t0 must lie below the nef threshold beta", details={"t0": t0})


def normalization_constant(normalization: Normalization, degree: int, d0: int, t0: int) -> Fraction:
    if normalization == Normalization.GEOMETRIC:
        return Fraction(factorial(degree + 1) * d0, 2 * t0)
    return Fraction(1)


def _select_root(
    candidates: list[Interval],
    M: Polynomial,
    beta: AlgebraicNumber,
    t0: int,
    c: Fraction,
    settings: Settings,
) -> Interval:
    top = M(Fraction(t0))
    current = beta
    for round_ in range(settings.refinement_cap):
        enclosure = (top - evaluate_interval(M, current.isolating)) * c
        hits = [iv for iv in candidates if iv.overlaps(enclosure)]
        if len(hits) == 1:
            logger.debug("volume root selected after %d refinement rounds", round_)
            return hits[0]
        if not hits:
            raise SelectionError("volume enclosure misses every candidate root")
        current = current.halve()
    raise SelectionError(
        "volume root still ambiguous at the refinement cap",
        details={"refinement_cap": settings.refinement_cap, "candidates": len(candidates)},
    )


def _decimal_hull(volume: AlgebraicNumber, iv: Interval, text: str, digits: int) -> Interval:
    """Widen iv to the reported decimal when that keeps it isolating."""
    approx = Fraction(text)
    refined = volume.refine(Fraction(1, 10 ** (digits + 1))).isolating
    hull = Interval(min(refined.lo, approx), max(refined.hi, approx))
    if sturm_chain(volume.min_poly).count_closed(hull.lo, hull.hi) == 1:
        return hull
    return iv


def cutkosky_volume(inp: ConstructionInput, settings: Settings | None = None) -> VolumeConstruction:
    """
    The exact volume V = c * (M_alpha(t0) - M_alpha(beta)).

    The minimal polynomial of V is computed inside Q[y]/(m_alpha) as the
    relation among powers of c * (M(t0) - M(y)). The resultant
    Res_y(m_alpha(y), x - c * (M(t0) - M(y))) must have the same squarefree
    part; its roots are then matched against an enclosure of V obtained by
    refining beta.

    Raises:
        InvalidInputError: On a non-primitive alpha, a non-totally-real field
            or an invalid t0 or d0
        ComputationError: If the resultant and the linear-algebra relation disagree
        SelectionError: If the root cannot be singled out within the refinement cap
    """
    settings = settings or get_settings()
    nf, alpha = inp.field, inp.alpha
    if alpha.field != nf:
        raise InvalidInputError("alpha does not belong to the given field")
    if isinstance(inp.d0, bool) or not isinstance(inp.d0, int) or inp.d0 < 1:
        raise InvalidInputError("polarization degree d0 must be a positive integer", details={"d0": inp.d0})
    m = volume_polynomial(alpha)
    if inp.t0 is None:
        t0 = choose_t0(alpha)
    else:
        _check_user_t0(m, inp.t0)
        t0 = inp.t0
    beta = _threshold_from(m, nf.irreducibility)
    M = m.antiderivative_zero()
    d = nf.degree
    c = normalization_constant(Normalization(inp.normalization), d, inp.d0, t0)
    top = M(Fraction(t0))

    # V as an element of Q[y]/(m_alpha)
    slice_field = build_field(
        m,
        totally_real=True,
        galois_attested=nf.galois_attested,
        irreducibility=nf.irreducibility,
        settings=settings,
    )
    value = (top - evaluate_polynomial(M, slice_field.generator())) * c
    relation = min_poly_of_element(value)

    # Cross-check against Res_y(m_alpha(y), x - c * (M(t0) - M(y)))
    def family(x: Fraction) -> Polynomial:
        return M * c + (x - c * top)

    eliminated = interpolated_resultant(m, family, d)
    if squarefree_part(eliminated) != relation:
        raise ComputationError(
            "resultant and linear-algebra minimal polynomials disagree",
            details={"field_degree": d},
        )

    # Match the roots of the relation against an enclosure of c * (M(t0) - M(beta))
    candidates = isolate_real_roots(relation)
    selected = _select_root(candidates, M, beta, t0, c, settings)
    # A reducible m_alpha can make V rational or leave it on a proper factor
    volume = isolated_factor(relation, selected, settings, known_irreducible=nf.irreducibility_proved)
    text = numeric_value(volume, settings.default_digits)
    if not volume.is_rational:
        hull = _decimal_hull(volume, volume.isolating, text, settings.default_digits)
        volume = AlgebraicNumber(volume.min_poly, hull, volume.minimality)
    logger.info(
        "volume of degree %d in a degree-%d field: %s (t0=%d, c=%s)",
        volume.degree, d, text, t0, c,
    )
    return VolumeConstruction(
        input=inp,
        t0=t0,
        beta=beta,
        m_alpha=m,
        M_alpha=M,
        volume=volume,
        normalization_constant=c,
        numeric_value=text,
        numeric_error_bound=Fraction(1, 2 * 10**settings.default_digits),
    )


def check_scaling(alpha: FieldElement, k: int, settings: Settings | None = None) -> ScalingCheck:
    """
    Compare the raw volumes of (alpha, t0) and (k*alpha, k*t0).

    The second equals k^(d+1) times the first; the check rescales it and
    demands an identical algebraic number.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInputError("scaling factor must be a positive integer", details={"k": k})
    nf = alpha.field
    t0 = choose_t0(alpha)
    base = cutkosky_volume(ConstructionInput(nf, alpha, t0), settings)
    scaled = cutkosky_volume(ConstructionInput(nf, alpha * k, k * t0), settings)
    factor = Fraction(k) ** (nf.degree + 1)
    identical = same_number(scaled.volume.scale(1 / factor), base.volume)
    return ScalingCheck(k=k, factor=factor, base=base, scaled=scaled, identical=identical)


def verify_scaling(alpha: FieldElement, k: int, settings: Settings | None = None) -> bool:
    return check_scaling(alpha, k, settings).identical


def _coordinate_values(bound: int) -> list[int]:
    values = [0]
    for v in range(1, bound + 1):
        values.extend((v, -v))
    return values


def search_candidates(degree: int, bound: int):
    """Integer vectors by max-norm shell, then lexicographically in the order 0, 1, -1, 2, -2, ..."""
    for shell in range(1, bound + 1):
        values = _coordinate_values(shell)
        for vector in product(values, repeat=degree):
            if max(abs(v) for v in vector) != shell:
                continue
            if reduce(gcd, vector, 0) != 1:
                continue
            yield vector


def run_primitive_search(field: NumberField, max_norm_bound: int) -> SearchOutcome:
    """
    First element with integer coordinates that is primitive and has a nonzero certificate.

    Raises:
        InvalidInputError: If the field is not totally real or the bound is below 1
        SearchExhaustedError: If no candidate within the bound qualifies
    """
    if not field.totally_real:
        raise InvalidInputError("primitive search needs a totally real field")
    if isinstance(max_norm_bound, bool) or not isinstance(max_norm_bound, int) or max_norm_bound < 1:
        raise InvalidInputError("search bound must be a positive integer", details={"bound": max_norm_bound})
    rejected: Counter[str] = Counter()
    examined = 0
    for vector in search_candidates(field.degree, max_norm_bound):
        examined += 1
        alpha = field.element(vector)
        if min_poly_of_element(alpha).degree != field.degree:
            rejected["not_primitive"] += 1
            continue
        certificate = certificate_det(alpha)
        if not certificate.nonzero:
            rejected["certificate_zero"] += 1
            logger.debug("certificate vanishes at %s", vector)
            continue
        logger.info("primitive search: %s accepted after %d candidates", list(vector), examined)
        return SearchOutcome(alpha, examined, dict(rejected), certificate)
    raise SearchExhaustedError(
        f"no admissible element with max-norm <= {max_norm_bound}",
        details={"examined": examined, "rejected": dict(rejected)},
    )


def primitive_search(field: NumberField, max_norm_bound: int) -> FieldElement:
    return run_primitive_search(field, max_norm_bound).element


def kunneth_product(
    a: AlgebraicNumber,
    dim_a: int,
    b: AlgebraicNumber,
    dim_b: int,
    settings: Settings | None = None,
) -> KunnethProduct:
    """Volume and dimension of the product of two polarized varieties."""
    for dim in (dim_a, dim_b):
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise InvalidInputError("ambient dimensions must be positive integers", details={"dimension": dim})
    volume = min_poly_combine(a, b, "product", settings)
    return KunnethProduct(((a, dim_a), (b, dim_b)), volume, dim_a + dim_b)


def _is_odd_prime(n: int) -> bool:
    return n > 2 and all(n % q for q in range(2, isqrt(n) + 1))


def pq_demo(p: int, q: int, settings: Settings | None = None) -> KunnethProduct:
    """
    A volume of degree p*q on a variety of dimension p+q+2.

    Raises:
        InvalidInputError: Unless p < q are odd primes with p not dividing q - 1
        ComputationError: If the product does not reach degree p*q
    """
    settings = settings or get_settings()
    if not (_is_odd_prime(p) and _is_odd_prime(q) and p < q):
        raise InvalidInputError("p and q must be odd primes with p < q", details={"p": p, "q": q})
    if (q - 1) % p == 0:
        raise InvalidInputError("p must not divide q - 1", details={"p": p, "q": q})
    constructions = []
    for degree in (p, q):
        nf = period_field(smallest_period_conductor(degree), degree, settings)
        alpha = run_primitive_search(nf, settings.search_bound).element
        constructions.append(cutkosky_volume(ConstructionInput(nf, alpha), settings))
    left, right = constructions
    result = kunneth_product(
        left.volume, left.ambient_dimension, right.volume, right.ambient_dimension, settings
    )
    if result.volume_degree != p * q or result.ambient_dimension != p + q + 2:
        raise ComputationError(
            "product volume missed the expected degree",
            details={"degree": result.volume_degree, "expected": p * q},
        )
    return KunnethProduct(result.operands, result.volume, result.ambient_dimension, tuple(constructions))
