# ABOUTME: Pydantic output documents for fields, volumes, products, searches and oracle runs
# ABOUTME: Converts engine values to JSON-ready models (rationals as "num/den" strings) and back

from fractions import Fraction
from typing import Any

from pydantic import BaseModel, Field

from app.models.errors import ErrorResponse, InvalidInputError
from app.services.algebraic import AlgebraicNumber
from app.services.number_field import CertificateMatrix, NumberField
from app.services.oracle import ConvergenceSummary, OracleReport, PiDemoReport
from app.services.volume import KunnethProduct, ScalingCheck, SearchOutcome, VolumeConstruction
from app.utils.parsing import format_polynomial, format_rational, parse_rational
from app.utils.polynomials import Polynomial
from app.utils.roots import Interval


class PolynomialOut(BaseModel):
    """A rational polynomial as content * (integer coefficients, low to high)."""
    coefficients: list[int]
    content: str
    text: str


class IntervalOut(BaseModel):
    lo: str
    hi: str


class AlgebraicNumberOut(BaseModel):
    min_poly: list[int]
    isolating: IntervalOut
    degree: int
    minimality: str = "proved"


class FieldOut(BaseModel):
    defining_poly: str
    coefficients: list[str]
    degree: int
    totally_real: bool
    galois_attested: bool
    irreducibility: str
    real_roots: list[IntervalOut]


class VolumeFlags(BaseModel):
    degree_equals_field_degree: bool
    galois_attested: bool
    irreducibility: str


class VolumeReport(BaseModel):
    field: FieldOut
    alpha: list[str]
    t0: int
    d0: int
    normalization: str
    beta: AlgebraicNumberOut
    m_alpha: PolynomialOut
    M_alpha: PolynomialOut
    volume: AlgebraicNumberOut
    volume_degree: int
    ambient_dimension: int
    nu_upper_bound: int
    normalization_constant: str
    numeric_value: str
    numeric_error_bound: str
    flags: VolumeFlags


class OperandOut(BaseModel):
    volume: AlgebraicNumberOut
    ambient_dimension: int


class ProductReport(BaseModel):
    operands: list[OperandOut]
    volume: AlgebraicNumberOut
    volume_degree: int
    ambient_dimension: int
    nu_upper_bound: int
    numeric_value: str
    constructions: list[VolumeReport] = Field(default_factory=list)


class CertificateOut(BaseModel):
    columns: list[list[str]]
    det: str


class SearchReport(BaseModel):
    field: FieldOut
    element: list[str]
    examined: int
    rejected: dict[str, int]
    certificate: CertificateOut
    volume: VolumeReport | None = None


class QuadraturePoint(BaseModel):
    k: int
    approximation: str
    residual: str | None = None


class ConvergenceOut(BaseModel):
    passed: bool
    final_residual: str
    threshold: str
    tail_start_k: int
    empirical_order: str | None
    reason: str


class OracleReportOut(BaseModel):
    values: list[QuadraturePoint]
    exact_reference: str | None = None
    convergence: ConvergenceOut | None = None


class ScalingOut(BaseModel):
    k: int
    factor: str
    base_volume: AlgebraicNumberOut
    scaled_volume: AlgebraicNumberOut
    identical: bool


class VerifyReport(BaseModel):
    volume: VolumeReport
    oracle: OracleReportOut
    scaling: ScalingOut | None = None


class PiDemoOut(BaseModel):
    N: int
    tolerance: str
    levels: list[QuadraturePoint]
    value: str
    ratio: str
    pi_reference: str
    pi_residual: str
    closed_form: str
    error_estimate: str
    converged: bool


class OutputDocument(BaseModel):
    """Every CLI emission: a result or an error, never both missing."""
    schema_version: str
    command: dict[str, Any]
    result: VolumeReport | ProductReport | SearchReport | VerifyReport | PiDemoOut | FieldOut | None = None
    warnings: list[str] = Field(default_factory=list)
    error: ErrorResponse | None = None


# --- conversions -------------------------------------------------------------

def _float(v: float) -> str:
    return repr(float(v))


def polynomial_out(p: Polynomial, var: str = "x") -> PolynomialOut:
    content, coeffs = p.content_and_primitive()
    return PolynomialOut(coefficients=coeffs, content=format_rational(content), text=format_polynomial(p, var))


def interval_out(iv: Interval) -> IntervalOut:
    return IntervalOut(lo=format_rational(iv.lo), hi=format_rational(iv.hi))


def algebraic_out(a: AlgebraicNumber) -> AlgebraicNumberOut:
    return AlgebraicNumberOut(
        min_poly=a.min_poly.integer_coefficients(),
        isolating=interval_out(a.isolating),
        degree=a.degree,
        minimality=a.minimality,
    )


def algebraic_in(doc: AlgebraicNumberOut) -> AlgebraicNumber:
    """Rebuild a stored number, checking that its interval still isolates a root."""
    iv = Interval(parse_rational(doc.isolating.lo), parse_rational(doc.isolating.hi))
    return AlgebraicNumber.from_polynomial(Polynomial(doc.min_poly), iv, doc.minimality)


def field_out(nf: NumberField) -> FieldOut:
    return FieldOut(
        defining_poly=format_polynomial(nf.defining_poly),
        coefficients=[format_rational(c) for c in nf.defining_poly.coefficients],
        degree=nf.degree,
        totally_real=nf.totally_real,
        galois_attested=nf.galois_attested,
        irreducibility=nf.irreducibility,
        real_roots=[interval_out(iv) for iv in nf.real_roots],
    )


def volume_report(res: VolumeConstruction) -> VolumeReport:
    nf = res.field
    return VolumeReport(
        field=field_out(nf),
        alpha=[format_rational(c) for c in res.input.alpha.coords],
        t0=res.t0,
        d0=res.input.d0,
        normalization=res.input.normalization.value,
        beta=algebraic_out(res.beta),
        m_alpha=polynomial_out(res.m_alpha, "t"),
        M_alpha=polynomial_out(res.M_alpha, "t"),
        volume=algebraic_out(res.volume),
        volume_degree=res.volume_degree,
        ambient_dimension=res.ambient_dimension,
        nu_upper_bound=res.nu_upper_bound,
        normalization_constant=format_rational(res.normalization_constant),
        numeric_value=res.numeric_value,
        numeric_error_bound=format_rational(res.numeric_error_bound),
        flags=VolumeFlags(
            degree_equals_field_degree=res.degree_equals_field_degree,
            galois_attested=nf.galois_attested,
            irreducibility=nf.irreducibility,
        ),
    )


def product_report(prod: KunnethProduct, numeric: str) -> ProductReport:
    return ProductReport(
        operands=[OperandOut(volume=algebraic_out(a), ambient_dimension=dim) for a, dim in prod.operands],
        volume=algebraic_out(prod.volume),
        volume_degree=prod.volume_degree,
        ambient_dimension=prod.ambient_dimension,
        nu_upper_bound=prod.nu_upper_bound,
        numeric_value=numeric,
        constructions=[volume_report(c) for c in prod.constructions],
    )


def operand_in(document: dict) -> tuple[AlgebraicNumber, int]:
    """
    The (volume, ambient dimension) stored in a VolumeReport or ProductReport.

    Accepts the bare report or a full output document wrapping it.

    Raises:
        InvalidInputError: If the document has neither shape
    """
    body = document.get("result", document) if isinstance(document, dict) else None
    if not isinstance(body, dict) or "volume" not in body or "ambient_dimension" not in body:
        raise InvalidInputError("document is not a stored volume or product report")
    try:
        operand = OperandOut.model_validate(
            {"volume": body["volume"], "ambient_dimension": body["ambient_dimension"]}
        )
    except ValueError as exc:
        raise InvalidInputError("malformed volume document", details={"reason": str(exc)}) from exc
    return algebraic_in(operand.volume), operand.ambient_dimension


def certificate_out(cert: CertificateMatrix) -> CertificateOut:
    return CertificateOut(
        columns=[[format_rational(c) for c in col] for col in cert.columns],
        det=format_rational(cert.det),
    )


def search_report(nf: NumberField, outcome: SearchOutcome, volume: VolumeConstruction | None) -> SearchReport:
    return SearchReport(
        field=field_out(nf),
        element=[format_rational(c) for c in outcome.element.coords],
        examined=outcome.examined,
        rejected=outcome.rejected,
        certificate=certificate_out(outcome.certificate),
        volume=volume_report(volume) if volume is not None else None,
    )


def convergence_out(summary: ConvergenceSummary) -> ConvergenceOut:
    return ConvergenceOut(
        passed=summary.passed,
        final_residual=_float(summary.final_residual),
        threshold=_float(summary.threshold),
        tail_start_k=summary.tail_start_k,
        empirical_order=_float(summary.empirical_order) if summary.empirical_order is not None else None,
        reason=summary.reason,
    )


def oracle_out(report: OracleReport, summary: ConvergenceSummary | None) -> OracleReportOut:
    residuals = report.residuals or (None,) * len(report.values)
    return OracleReportOut(
        values=[
            QuadraturePoint(k=k, approximation=_float(v), residual=_float(r) if r is not None else None)
            for (k, v), r in zip(report.values, residuals)
        ],
        exact_reference=report.exact_reference,
        convergence=convergence_out(summary) if summary is not None else None,
    )


def scaling_out(check: ScalingCheck) -> ScalingOut:
    return ScalingOut(
        k=check.k,
        factor=format_rational(check.factor),
        base_volume=algebraic_out(check.base.volume),
        scaled_volume=algebraic_out(check.scaled.volume),
        identical=check.identical,
    )


def pi_demo_out(report: PiDemoReport) -> PiDemoOut:
    residuals = report.residuals or (None,) * len(report.values)
    return PiDemoOut(
        N=report.N,
        tolerance=format_rational(Fraction(report.tolerance)),
        levels=[
            QuadraturePoint(k=level, approximation=_float(v), residual=_float(r) if r is not None else None)
            for (level, v), r in zip(report.values, residuals)
        ],
        value=_float(report.value),
        ratio=_float(report.ratio),
        pi_reference=report.pi_reference,
        pi_residual=_float(report.pi_residual),
        closed_form=_float(report.closed_form),
        error_estimate=_float(report.approximation.error_bound),
        converged=report.converged,
    )
