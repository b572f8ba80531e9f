# ABOUTME: Independent floating-point cross-checks of the exact volume pipeline
# ABOUTME: Midpoint Riemann sums on the nef slice, the disk quadrature behind 3*pi*N, decimal rendering

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, log2

import mpmath
import numpy as np

from app.config import Settings, get_settings
from app.models.errors import ComputationError, ConvergenceError, InvalidInputError

logger = logging.getLogger(__name__)

# The demo volume is fixed as 6N times the integral of max(0, 1 - x^2 - y^2) over the
# (x, y) slice plane. The standard simplex maps onto the slice triangle with Jacobian 24,
# so simplex integrals of the surface volume are multiplied by 6 * 24.
DISK_NORMALIZATION = 6
SIMPLEX_JACOBIAN = 24
PI_DEMO_SCALE = DISK_NORMALIZATION * SIMPLEX_JACOBIAN

# Images of the simplex vertices M0 = A-2D1-2D2, M1 = A+2D1-2D2, M2 = A+4D2 in the (x, y) slice.
_SLICE_VERTICES = np.array([[-2.0, -2.0], [2.0, -2.0], [0.0, 4.0]])


@dataclass(frozen=True)
class QuadratureConfig:
    """Doubling schedule for the 1-D oracle, or a tolerance for the adaptive 2-D one."""
    k_min: int = 16
    k_max: int = 4096
    tolerance: Fraction | None = None
    max_level: int = 22

    def __post_init__(self):
        if self.k_min < 1:
            raise InvalidInputError("k must be at least 1", details={"k_min": self.k_min})
        if self.k_max < self.k_min:
            raise InvalidInputError("k_max must not be below k_min")
        if self.tolerance is not None and self.tolerance <= 0:
            raise InvalidInputError("tolerance must be positive")
        if self.max_level < 1:
            raise InvalidInputError("max_level must be positive")

    @classmethod
    def from_settings(cls, settings: Settings) -> "QuadratureConfig":
        return cls(
            k_min=settings.riemann_k_min,
            k_max=settings.riemann_k_max,
            tolerance=Fraction(str(settings.pi_tolerance)),
            max_level=settings.pi_max_level,
        )

    @property
    def schedule(self) -> list[int]:
        ks = [self.k_min]
        while ks[-1] * 2 <= self.k_max:
            ks.append(ks[-1] * 2)
        return ks


@dataclass(frozen=True)
class OracleReport:
    values: tuple[tuple[int, float], ...]
    exact_reference: str | None = None
    residuals: tuple[float, ...] | None = None


@dataclass(frozen=True, kw_only=True)
class PiDemoReport(OracleReport):
    N: int
    tolerance: Fraction
    value: float
    ratio: float
    pi_reference: str
    pi_residual: float
    closed_form: float
    converged: bool

    @property
    def approximation(self) -> "FloatApprox":
        """The final value, bounded by the change over the last level."""
        if len(self.values) < 2:
            return FloatApprox(self.value, float("inf"))
        return FloatApprox(self.value, abs(self.values[-1][1] - self.values[-2][1]))


@dataclass(frozen=True)
class PiDemoInput:
    N: int
    config: QuadratureConfig = field(default_factory=lambda: QuadratureConfig(tolerance=Fraction(1, 10**8)))

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1:
            raise InvalidInputError("N must be a positive integer", details={"N": self.N})
        if self.config.tolerance is None:
            raise InvalidInputError("the disk quadrature needs a tolerance")


@dataclass(frozen=True)
class FloatApprox:
    value: float
    error_bound: float


@dataclass(frozen=True)
class ConvergenceSummary:
    passed: bool
    final_residual: float
    threshold: float
    tail_start_k: int
    empirical_order: float | None
    reason: str


def numeric_value(a, digits: int) -> str:
    """
    Decimal rendering of an algebraic number, rounded half away from zero.

    Examples:
        sqrt(2), 6 -> "1.414214"
        1/2, 6 -> "0.500000"
    """
    if isinstance(digits, bool) or not isinstance(digits, int) or digits < 0:
        raise InvalidInputError("digits must be a non-negative integer", details={"digits": digits})
    mid = a.refine(Fraction(1, 10 ** (digits + 1))).isolating.midpoint
    scaled = floor(abs(mid) * 10**digits + Fraction(1, 2))
    whole, frac = divmod(scaled, 10**digits)
    sign = "-" if mid < 0 and scaled != 0 else ""
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def _compare_with(beta, x: Fraction, cap: int):
    """Sign of x - beta, refining beta as needed; returns (sign, refined beta)."""
    for _ in range(cap):
        iv = beta.isolating
        if x > iv.hi:
            return 1, beta
        if x < iv.lo:
            return -1, beta
        if beta.min_poly(x) == 0:
            return 0, beta
        beta = beta.halve()
    raise ComputationError("grid point stays inside the threshold interval", details={"point": str(x)})


def _first_index_above(beta, start: Fraction, h: Fraction, k: int, cap: int):
    """Smallest j with start + h*(j + 1/2) > beta (k when there is none)."""
    estimate = (Fraction(beta.isolating.midpoint) - start) / h - Fraction(1, 2)
    j = min(max(floor(estimate) + 1, 0), k)

    def point(i: int) -> Fraction:
        return start + h * (i + Fraction(1, 2))

    while j > 0:
        sign, beta = _compare_with(beta, point(j - 1), cap)
        if sign <= 0:
            break
        j -= 1
    while j < k:
        sign, beta = _compare_with(beta, point(j), cap)
        if sign > 0:
            break
        j += 1
    return j, beta


def riemann_sums(m, lower, t0: int, schedule: list[int], settings: Settings | None = None) -> list[tuple[int, float]]:
    """
    Midpoint sums of f over [-t0, t0] with f = m above `lower` and 0 below.

    `lower` is an algebraic number, or None for the whole range.
    """
    settings = settings or get_settings()
    coeffs = np.array([float(c) for c in reversed(m.coefficients)] or [0.0])
    out = []
    for k in schedule:
        h = Fraction(2 * t0, k)
        start = Fraction(-t0)
        first = 0
        if lower is not None:
            first, lower = _first_index_above(lower, start, h, k, settings.refinement_cap)
        points = float(start) + float(h) * (np.arange(first, k, dtype=np.float64) + 0.5)
        total = float(h) * float(np.sum(np.polyval(coeffs, points))) if first < k else 0.0
        out.append((k, total))
    return out


def riemann_volume_r1(m, beta, t0: int, cfg: QuadratureConfig, exact=None, settings: Settings | None = None) -> OracleReport:
    """
    Midpoint Riemann sums of the step-function integrand on the nef slice.

    Grid points are compared with beta exactly; only the summation is done in
    floating point. Residuals are taken against `exact` when given.

    Raises:
        InvalidInputError: If m is not monic, beta is not a root of m, or t0 <= beta
        ComputationError: If a grid point cannot be separated from beta
    """
    settings = settings or get_settings()
    if m.degree < 1 or m.leading != 1:
        raise InvalidInputError("integrand polynomial must be monic of positive degree")
    if not (m % beta.min_poly).is_zero:
        raise InvalidInputError("beta must be a root of the integrand polynomial")
    if isinstance(t0, bool) or not isinstance(t0, int) or t0 < 1:
        raise InvalidInputError("t0 must be a positive integer", details={"t0": t0})
    if _compare_with(beta, Fraction(t0), settings.refinement_cap)[0] <= 0:
        raise InvalidInputError("t0 must be a positive integer above beta", details={"t0": t0})
    values = riemann_sums(m, beta, t0, cfg.schedule, settings)
    return _with_residuals(values, exact)


def _with_residuals(values, exact) -> OracleReport:
    if exact is None:
        return OracleReport(tuple(values))
    reference = float(exact.refine(Fraction(1, 10**18)).isolating.midpoint)
    residuals = tuple(abs(v - reference) for _, v in values)
    return OracleReport(tuple(values), numeric_value(exact, 12), residuals)


def convergence_report(report: OracleReport, threshold: float) -> ConvergenceSummary:
    """
    Verdict on a doubling schedule: a non-increasing tail covering the last
    three entries and a final residual below the threshold.

    The empirical order is the least-squares slope of -log2(residual)
    against log2(k) over the tail.
    """
    if report.residuals is None:
        raise InvalidInputError("convergence needs residuals against an exact reference")
    ks = [k for k, _ in report.values]
    if len(ks) < 3:
        raise InvalidInputError("convergence needs at least three schedule entries")
    if any(b != 2 * a for a, b in zip(ks, ks[1:])):
        raise InvalidInputError("convergence needs a doubling schedule")
    residuals = list(report.residuals)
    tail = len(residuals) - 1
    while tail > 0 and residuals[tail - 1] >= residuals[tail]:
        tail -= 1
    tail_length = len(residuals) - tail
    final = residuals[-1]
    order = None
    positive = [(k, r) for k, r in zip(ks[tail:], residuals[tail:]) if r > 0]
    if len(positive) >= 2:
        slope = np.polyfit([log2(k) for k, _ in positive], [log2(r) for _, r in positive], 1)[0]
        order = float(-slope)
    if final >= threshold:
        passed, reason = False, f"final residual {final:.3e} is not below {threshold:.3e}"
    elif tail_length < 3:
        passed, reason = False, "residuals are not non-increasing over the last three entries"
    else:
        passed, reason = True, "non-increasing tail and final residual below threshold"
    return ConvergenceSummary(passed, final, float(threshold), ks[tail], order, reason)


# --- disk quadrature ----------------------------------------------------------

def _to_slice(lam: np.ndarray) -> np.ndarray:
    """Barycentric (lambda1, lambda2) -> (x, y); lambda0 = 1 - lambda1 - lambda2."""
    l1, l2 = lam[..., 0], lam[..., 1]
    l0 = 1.0 - l1 - l2
    weights = np.stack([l0, l1, l2], axis=-1)
    return weights @ _SLICE_VERTICES


def slice_class(lam0: float, lam1: float, lam2: float) -> tuple[float, float]:
    """The (x, y) of the class A + x*D1 + y*D2 at a simplex point."""
    x, y = np.array([lam0, lam1, lam2]) @ _SLICE_VERTICES
    return float(x), float(y)


def surface_volume(x, y, N: int):
    """vol(A + x*D1 + y*D2) = N * max(0, 1 - x^2 - y^2)."""
    return N * np.maximum(0.0, 1.0 - np.asarray(x) ** 2 - np.asarray(y) ** 2)


def _segment_distance_sq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = b - a
    length_sq = np.einsum("ij,ij->i", d, d)
    t = np.clip(-np.einsum("ij,ij->i", a, d) / length_sq, 0.0, 1.0)
    closest = a + t[:, None] * d
    return np.einsum("ij,ij->i", closest, closest)


def _classify(tri_xy: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Masks of triangles inside the unit disk and of triangles that miss it."""
    r2 = np.einsum("ijk,ijk->ij", tri_xy, tri_xy)
    inside = np.all(r2 <= 1.0, axis=1)
    a, b, c = tri_xy[:, 0], tri_xy[:, 1], tri_xy[:, 2]
    dist_sq = np.minimum(
        np.minimum(_segment_distance_sq(a, b), _segment_distance_sq(b, c)),
        _segment_distance_sq(c, a),
    )
    cross = lambda p, q: p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0]  # noqa: E731
    s1, s2, s3 = cross(a, b), cross(b, c), cross(c, a)
    holds_origin = ((s1 >= 0) & (s2 >= 0) & (s3 >= 0)) | ((s1 <= 0) & (s2 <= 0) & (s3 <= 0))
    outside = (dist_sq >= 1.0) & ~holds_origin
    return inside, outside


def _edge_midpoint_rule(tri_lam: np.ndarray, area: float, N: int) -> float:
    """Area/3 times the integrand at the edge midpoints; exact for quadratics."""
    mids = (tri_lam + np.roll(tri_lam, -1, axis=1)) / 2.0
    xy = _to_slice(mids)
    values = surface_volume(xy[..., 0], xy[..., 1], N)
    return float(area / 3.0 * np.sum(values))


def _subdivide(tri: np.ndarray) -> np.ndarray:
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    ab, bc, ca = (a + b) / 2, (b + c) / 2, (c + a) / 2
    children = np.stack(
        [
            np.stack([a, ab, ca], axis=1),
            np.stack([ab, b, bc], axis=1),
            np.stack([ca, bc, c], axis=1),
            np.stack([ab, bc, ca], axis=1),
        ],
        axis=1,
    )
    return children.reshape(-1, 3, 2)


def closed_form_pi_value(N: int) -> float:
    """3*pi*N."""
    return float(3 * mpmath.pi * N)


def pi_demo(inp: PiDemoInput, settings: Settings | None = None) -> PiDemoReport:
    """
    6N times the integral of max(0, 1 - x^2 - y^2) over the slice plane, i.e. 3*pi*N.

    The integral is taken over the standard simplex pulled back through the
    slice map, which multiplies the surface volume by PI_DEMO_SCALE.

    The simplex is refined level by level into four congruent triangles.
    Triangles inside the unit disk are integrated exactly and retired,
    triangles missing the disk are dropped, and only those crossing the
    circle are refined further. The run stops once two consecutive levels
    agree to the tolerance.

    Raises:
        ConvergenceError: If the level cap is reached first
    """
    settings = settings or get_settings()
    N = inp.N
    tol = float(inp.config.tolerance)
    scale = PI_DEMO_SCALE
    active = np.array([[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]])
    settled = 0.0
    history: list[tuple[int, float]] = []
    calm_levels = 0
    converged = False
    for level in range(inp.config.max_level + 1):
        area = 0.5 / 4**level
        # Retire triangles inside the disk, drop those outside
        inside, outside = _classify(_to_slice(active))
        if inside.any():
            settled += scale * _edge_midpoint_rule(active[inside], area, N)
        active = active[~inside & ~outside]
        estimate = settled + scale * _edge_midpoint_rule(active, area, N) if len(active) else settled
        history.append((level, estimate))
        logger.debug("disk quadrature level %d: %d boundary triangles, estimate %.12f", level, len(active), estimate)
        # Two calm levels in a row end the run
        if len(history) >= 2 and abs(history[-1][1] - history[-2][1]) < tol:
            calm_levels += 1
        else:
            calm_levels = 0
        if level >= 6 and calm_levels >= 2:
            converged = True
            break
        active = _subdivide(active)
    value = history[-1][1]
    ratio = value / (3 * N)
    with mpmath.workdps(settings.pi_reference_digits):
        pi_ref = +mpmath.mp.pi
        residual = float(abs(mpmath.mpf(ratio) - pi_ref))
        pi_text = mpmath.nstr(pi_ref, settings.pi_reference_digits)
        closed = 3 * pi_ref * N
        residuals = tuple(float(abs(mpmath.mpf(v) - closed)) for _, v in history)
        closed_text = mpmath.nstr(closed, 15)
    report = PiDemoReport(
        values=tuple(history),
        exact_reference=closed_text,
        residuals=residuals,
        N=N,
        tolerance=inp.config.tolerance,
        value=value,
        ratio=ratio,
        pi_reference=pi_text,
        pi_residual=residual,
        closed_form=closed_form_pi_value(N),
        converged=converged,
    )
    if not converged:
        raise ConvergenceError(
            "disk quadrature did not settle within the level cap",
            details={"max_level": inp.config.max_level, "last_estimate": value},
        )
    logger.info("pi demo: N=%d value=%.10f ratio=%.10f residual=%.2e", N, value, ratio, residual)
    return report
