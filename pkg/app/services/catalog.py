# ABOUTME: Catalog of attested totally real Galois fields
# ABOUTME: Real quadratic fields, maximal real cyclotomic subfields and Gaussian period fields

import logging
from functools import lru_cache
from math import gcd, isqrt

from app.config import Settings
from app.models.errors import InvalidInputError
from app.services.number_field import PROVED, NumberField, build_field, min_poly_of_element
from app.utils.polynomials import Polynomial

logger = logging.getLogger(__name__)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, isqrt(n) + 1))


def _is_squarefree_int(n: int) -> bool:
    return all(n % (q * q) for q in range(2, isqrt(n) + 1))


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Polynomial:
    """
    The n-th cyclotomic polynomial, by exact division of t^n - 1.

    Examples:
        cyclotomic_polynomial(7) -> t^6 + t^5 + ... + 1
        cyclotomic_polynomial(15) -> t^8 - t^7 + t^5 - t^4 + t^3 - t + 1
    """
    if n < 1:
        raise InvalidInputError("cyclotomic index must be positive")
    result = Polynomial.monomial(n) - 1
    for d in _divisors(n)[:-1]:
        quotient, remainder = result.divrem(cyclotomic_polynomial(d))
        if not remainder.is_zero:
            raise ArithmeticError(f"cyclotomic division left a remainder at n={n}, d={d}")
        result = quotient
    return result


def palindromic_reduction(phi: Polynomial) -> Polynomial:
    """
    The psi with phi(t) = t^k * psi(t + 1/t) for a palindromic phi of degree 2k.

    Uses t^j + t^-j = T_j(y) with T_0 = 2, T_1 = y, T_{j+1} = y*T_j - T_{j-1}.
    """
    coeffs = phi.coefficients
    if phi.degree % 2 or coeffs != tuple(reversed(coeffs)):
        raise InvalidInputError("polynomial is not palindromic of even degree")
    k = phi.degree // 2
    y = Polynomial.identity()
    previous, current = Polynomial.constant(2), y
    psi = Polynomial.constant(coeffs[k])
    for j in range(1, k + 1):
        psi = psi + current * coeffs[k + j]
        previous, current = current, y * current - previous
    return psi


def quadratic_field(D: int, settings: Settings | None = None) -> NumberField:
    """Q(sqrt D) = Q[t]/(t^2 - D) for squarefree D >= 2."""
    if D < 2 or not _is_squarefree_int(D):
        raise InvalidInputError("quadratic field needs a squarefree integer D >= 2", details={"D": D})
    m = Polynomial([-D, 0, 1])
    return build_field(m, totally_real=True, galois_attested=True, irreducibility=PROVED, settings=settings)


def real_cyclotomic_field(n: int, settings: Settings | None = None) -> NumberField:
    """
    Q(zeta_n + zeta_n^-1), of degree phi(n)/2.

    Examples:
        real_cyclotomic_field(7) -> defining polynomial t^3 + t^2 - 2t - 1
    """
    if n < 5 or n == 6:
        raise InvalidInputError("real cyclotomic field needs n >= 5 and n != 6", details={"n": n})
    psi = palindromic_reduction(cyclotomic_polynomial(n))
    return build_field(psi, totally_real=True, galois_attested=True, irreducibility=PROVED, settings=settings)


def _primitive_root(ell: int) -> int:
    order = ell - 1
    factors = [q for q in _divisors(order) if _is_prime(q)]
    for g in range(2, ell):
        if all(pow(g, order // q, ell) != 1 for q in factors):
            return g
    raise ArithmeticError(f"no primitive root modulo {ell}")


def period_field(conductor: int, degree: int, settings: Settings | None = None) -> NumberField:
    """
    The degree-`degree` subfield of Q(zeta_ell) generated by a Gaussian period.

    The period is the sum of zeta^h over the subgroup of index `degree` in
    (Z/ell)^*. The field is cyclic, and totally real when the subgroup has
    even order.

    Raises:
        InvalidInputError: If ell is not prime or degree does not divide ell - 1
    """
    ell = conductor
    if not _is_prime(ell):
        raise InvalidInputError("period field needs a prime conductor", details={"conductor": ell})
    if degree < 1 or (ell - 1) % degree:
        raise InvalidInputError(
            "period degree must divide conductor - 1", details={"conductor": ell, "degree": degree}
        )
    phi = cyclotomic_polynomial(ell)
    cyclotomic = NumberField(phi, totally_real=False, galois_attested=True, irreducibility=PROVED)
    g = _primitive_root(ell)
    subgroup = {pow(g, degree * i, ell) for i in range((ell - 1) // degree)}
    exponents = [0] * ell
    for h in subgroup:
        exponents[h] += 1
    period = cyclotomic.element(exponents)
    psi = min_poly_of_element(period)
    if psi.degree != degree:
        raise ArithmeticError(f"period of conductor {ell} has degree {psi.degree}, expected {degree}")
    totally_real = len(subgroup) % 2 == 0 or degree == 1
    logger.debug("period field: conductor=%d degree=%d psi=%s", ell, degree, psi)
    return build_field(
        psi, totally_real=totally_real, galois_attested=True, irreducibility=PROVED, settings=settings
    )


def smallest_period_conductor(degree: int, limit: int = 10_000) -> int:
    """
    Smallest prime ell = 1 (mod 2*degree); its period field of that degree is totally real.

    Examples:
        3 -> 7, 5 -> 11, 7 -> 29
    """
    if degree < 1:
        raise InvalidInputError("degree must be positive")
    for ell in range(2 * degree + 1, limit, 2 * degree):
        if _is_prime(ell):
            return ell
    raise InvalidInputError("no catalog field of the requested degree", details={"degree": degree})


def catalog_field(kind: str, *params: int, settings: Settings | None = None) -> NumberField:
    """Dispatch on "quadratic", "cyclotomic" or "period"."""
    if kind == "quadratic":
        return quadratic_field(*params, settings=settings)
    if kind == "cyclotomic":
        return real_cyclotomic_field(*params, settings=settings)
    if kind == "period":
        return period_field(*params, settings=settings)
    raise InvalidInputError(f"unknown catalog family: {kind}")
