# ABOUTME: Tests for the floating-point oracles and decimal rendering
# ABOUTME: Riemann sums on the nef slice, convergence verdicts and the disk quadrature

import math
from fractions import Fraction

import pytest

from app.models.errors import ConvergenceError, InvalidInputError
from app.services.algebraic import AlgebraicNumber
from app.services.number_field import make_field
from app.services.volume import ConstructionInput, cutkosky_volume
from app.services.oracle import (
    PI_DEMO_SCALE,
    OracleReport,
    PiDemoInput,
    QuadratureConfig,
    closed_form_pi_value,
    convergence_report,
    numeric_value,
    pi_demo,
    riemann_sums,
    riemann_volume_r1,
    slice_class,
    surface_volume,
)
from app.utils.polynomials import Polynomial
from app.utils.roots import Interval
from tests.conftest import poly


def sqrt2() -> AlgebraicNumber:
    return AlgebraicNumber.from_polynomial(poly("x^2-2"), Interval(1, 2))


# ============================================================================
# numeric_value
# ============================================================================

def test_numeric_value_examples():
    """Six digits by default in the engine, rounded half away from zero."""
    assert numeric_value(sqrt2(), 6) == "1.414214"
    assert numeric_value(AlgebraicNumber.rational(Fraction(1, 2)), 6) == "0.500000"
    assert numeric_value(sqrt2(), 0) == "1"


def test_numeric_value_rounding_and_sign():
    """Ties round away from zero on both sides."""
    minus = AlgebraicNumber.from_polynomial(poly("x^2-2"), Interval(-2, -1))

    assert numeric_value(minus, 6) == "-1.414214"
    assert numeric_value(AlgebraicNumber.rational(Fraction(1, 8)), 2) == "0.13"
    assert numeric_value(AlgebraicNumber.rational(Fraction(-1, 8)), 2) == "-0.13"
    assert numeric_value(AlgebraicNumber.rational(Fraction(-1, 1000)), 2) == "0.00"


def test_numeric_value_rejects_negative_digits():
    """digits must be a non-negative integer."""
    with pytest.raises(InvalidInputError):
        numeric_value(sqrt2(), -1)


# ============================================================================
# Riemann sums
# ============================================================================

def test_quadrature_config_schedule_and_validation():
    """Doubling schedule from k_min to k_max."""
    assert QuadratureConfig().schedule == [16, 32, 64, 128, 256, 512, 1024, 2048, 4096]
    assert QuadratureConfig(k_min=1, k_max=5).schedule == [1, 2, 4]

    with pytest.raises(InvalidInputError):
        QuadratureConfig(k_min=0)
    with pytest.raises(InvalidInputError):
        QuadratureConfig(k_min=64, k_max=32)
    with pytest.raises(InvalidInputError):
        QuadratureConfig(tolerance=Fraction(0))


def test_single_step_sum_is_zero_below_threshold():
    """With k = 1 the only midpoint is t = 0 < beta, so the sum vanishes."""
    report = riemann_volume_r1(poly("x^2-2"), sqrt2(), 2, QuadratureConfig(k_min=1, k_max=1))
    assert report.values == ((1, 0.0),)
    assert report.residuals is None


def test_constant_integrand_is_exact():
    """Midpoint sums of 1 over [-2, 2] are exactly 4."""
    values = riemann_sums(Polynomial([1]), None, 2, [1, 4, 64])
    assert values == [(1, 4.0), (4, 4.0), (64, 4.0)]


def test_odd_integrand_cancels():
    """Midpoints are symmetric, so t integrates to zero over the full range."""
    for _, value in riemann_sums(poly("x"), None, 3, [8, 16]):
        assert abs(value) < 1e-12


def test_sqrt2_riemann_sums_converge(sqrt2_volume):
    """Residuals decrease monotonically from k = 16 to 4096 and end below 1e-6."""
    res = sqrt2_volume
    report = riemann_volume_r1(res.m_alpha, res.beta, res.t0, QuadratureConfig(), exact=res.volume)

    summary = convergence_report(report, 1e-4)

    assert summary.passed
    assert summary.final_residual < 1e-6
    assert summary.tail_start_k == 16
    assert summary.empirical_order > 1
    assert report.exact_reference == "0.552284749831"
    assert list(report.residuals) == sorted(report.residuals, reverse=True)


def test_rational_riemann_sums_converge():
    """f = t - 2 above 2 on [-3, 3]: residual h^2/18 at every level."""
    beta = AlgebraicNumber.rational(2)
    report = riemann_volume_r1(poly("x-2"), beta, 3, QuadratureConfig(), exact=AlgebraicNumber.rational(Fraction(1, 2)))

    summary = convergence_report(report, 1e-4)

    assert summary.passed
    for (k, _), r in zip(report.values, report.residuals):
        assert r == pytest.approx((6 / k) ** 2 / 18, rel=1e-6)


def test_grid_point_on_rational_threshold_counts_as_zero():
    """k = 3 puts a midpoint exactly on beta = 2; f vanishes there."""
    values = riemann_sums(poly("x-2"), AlgebraicNumber.rational(2), 3, [3])
    assert values == [(3, 0.0)]


def test_wrong_reference_fails_convergence(sqrt2_volume):
    """Residuals against a wrong value stay large and the verdict is negative."""
    res = sqrt2_volume
    report = riemann_volume_r1(res.m_alpha, res.beta, res.t0, QuadratureConfig(), exact=AlgebraicNumber.rational(1))

    summary = convergence_report(report, 1e-4)

    assert not summary.passed
    assert "not below" in summary.reason


def test_riemann_validation(sqrt2_volume):
    """Non-monic integrands, foreign thresholds and t0 below beta are rejected."""
    res = sqrt2_volume
    cfg = QuadratureConfig()

    with pytest.raises(InvalidInputError):
        riemann_volume_r1(poly("2*x^2-4"), res.beta, 2, cfg)
    with pytest.raises(InvalidInputError):
        riemann_volume_r1(poly("x^2-3"), res.beta, 2, cfg)
    with pytest.raises(InvalidInputError):
        riemann_volume_r1(res.m_alpha, res.beta, 1, cfg)


def test_riemann_sums_on_a_reducible_field():
    """t^2 - 1 gives a rational beta = 1; the sums still converge to 4/3."""
    nf = make_field(poly("x^2-1"))
    res = cutkosky_volume(ConstructionInput(nf, nf.generator()))

    report = riemann_volume_r1(res.m_alpha, res.beta, res.t0, QuadratureConfig(), exact=res.volume)

    assert convergence_report(report, 1e-4).passed
    assert abs(report.values[-1][1] - 4 / 3) < 1e-5


def test_convergence_report_validation():
    """Residuals, three entries and a doubling schedule are required."""
    with pytest.raises(InvalidInputError):
        convergence_report(OracleReport(((16, 1.0), (32, 1.0), (64, 1.0))), 1e-4)
    with pytest.raises(InvalidInputError):
        convergence_report(OracleReport(((16, 1.0), (32, 1.0)), "1", (0.1, 0.01)), 1e-4)
    with pytest.raises(InvalidInputError):
        convergence_report(OracleReport(((16, 1.0), (48, 1.0), (96, 1.0)), "1", (0.1, 0.01, 0.001)), 1e-4)


def test_convergence_requires_non_increasing_tail():
    """A rising last residual breaks the tail even below the threshold."""
    report = OracleReport(((16, 0.0), (32, 0.0), (64, 0.0)), "0", (1e-6, 1e-7, 1e-5))

    summary = convergence_report(report, 1e-4)

    assert not summary.passed
    assert summary.tail_start_k == 64


# ============================================================================
# Disk quadrature
# ============================================================================

def test_slice_geometry():
    """Simplex vertices map to the triangle corners; the barycenter maps to the origin."""
    assert slice_class(1.0, 0.0, 0.0) == (-2.0, -2.0)
    assert slice_class(0.0, 0.0, 1.0) == (0.0, 4.0)
    x, y = slice_class(1 / 3, 1 / 3, 1 / 3)
    assert abs(x) < 1e-12 and abs(y) < 1e-12


def test_surface_volume():
    """N * max(0, 1 - x^2 - y^2)."""
    assert surface_volume(0.0, 0.0, 5) == 5.0
    assert surface_volume(0.6, 0.0, 1) == pytest.approx(0.64)
    assert surface_volume(1.0, 1.0, 3) == 0.0


def test_pi_demo_input_validation():
    """N must be a positive integer and a tolerance is required."""
    for bad in (0, -1, True):
        with pytest.raises(InvalidInputError):
            PiDemoInput(N=bad)
    with pytest.raises(InvalidInputError):
        PiDemoInput(N=1, config=QuadratureConfig())


@pytest.mark.parametrize("N", [1, 5])
def test_pi_demo_recovers_pi(N):
    """value / (3N) agrees with pi to 1e-6."""
    report = pi_demo(PiDemoInput(N=N))

    assert report.converged
    assert abs(report.ratio - math.pi) < 1e-6
    assert report.pi_residual < 1e-6
    assert report.closed_form == pytest.approx(3 * math.pi * N)
    assert report.pi_reference.startswith("3.14159265358979")
    assert report.approximation.error_bound < 1e-8


def test_pi_demo_is_linear_in_N():
    """The estimate scales with N."""
    one = pi_demo(PiDemoInput(N=1)).value
    seven = pi_demo(PiDemoInput(N=7)).value
    assert seven == pytest.approx(7 * one, rel=1e-7)


def test_pi_demo_level_cap():
    """Stopping before the minimum depth raises ConvergenceError."""
    cfg = QuadratureConfig(tolerance=Fraction(1, 10**8), max_level=3)
    with pytest.raises(ConvergenceError) as exc_info:
        pi_demo(PiDemoInput(N=1, config=cfg))
    assert exc_info.value.details["max_level"] == 3


def test_closed_form():
    """3 * pi * N."""
    assert closed_form_pi_value(2) == pytest.approx(6 * math.pi)


def test_pi_demo_scale_matches_disk_integral():
    """PI_DEMO_SCALE times the simplex integral is 6N times the disk integral of 1 - x^2 - y^2."""
    assert PI_DEMO_SCALE == 144

    # The disk integral of 1 - r^2 is pi/2; pulled back to the simplex it is divided by 24.
    simplex_integral = (math.pi / 2) / 24
    assert PI_DEMO_SCALE * simplex_integral == pytest.approx(6 * math.pi / 2)
    assert pi_demo(PiDemoInput(N=2)).value == pytest.approx(PI_DEMO_SCALE * 2 * simplex_integral, rel=1e-6)
