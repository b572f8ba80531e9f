# ABOUTME: Polynomial arithmetic over small prime fields
# ABOUTME: Distinct-degree factorization patterns used to prove irreducibility over Q

import logging
from collections.abc import Iterator
from functools import reduce

from app.utils.polynomials import Polynomial

logger = logging.getLogger(__name__)

ModPoly = list[int]


def _trim(a: ModPoly) -> ModPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _reduce(coeffs: list[int], p: int) -> ModPoly:
    return _trim([c % p for c in coeffs])


def _sub(a: ModPoly, b: ModPoly, p: int) -> ModPoly:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _mul(a: ModPoly, b: ModPoly, p: int) -> ModPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _divmod(a: ModPoly, b: ModPoly, p: int) -> tuple[ModPoly, ModPoly]:
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for shift in range(len(r) - 1 - db, -1, -1):
        coef = r[shift + db] * inv % p
        q[shift] = coef
        if coef:
            for j, y in enumerate(b):
                r[shift + j] = (r[shift + j] - coef * y) % p
    return _trim(q), _trim(r[:db])


def _monic(a: ModPoly, p: int) -> ModPoly:
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a: ModPoly, b: ModPoly, p: int) -> ModPoly:
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p) if a else a


def _powmod(base: ModPoly, exponent: int, modulus: ModPoly, p: int) -> ModPoly:
    result: ModPoly = [1]
    base = _divmod(base, modulus, p)[1]
    while exponent:
        if exponent & 1:
            result = _divmod(_mul(result, base, p), modulus, p)[1]
        base = _divmod(_mul(base, base, p), modulus, p)[1]
        exponent >>= 1
    return result


def _derivative(a: ModPoly, p: int) -> ModPoly:
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def small_primes() -> Iterator[int]:
    """2, 3, 5, 7, ... by trial division."""
    found: list[int] = []
    n = 2
    while True:
        if all(n % q for q in found if q * q <= n):
            found.append(n)
            yield n
        n += 1


def degree_pattern(coeffs: list[int], p: int) -> list[int] | None:
    """
    Degrees of the irreducible factors of f modulo p.

    Returns None when p divides the leading coefficient or f is not
    squarefree modulo p; such primes say nothing about f over Q.

    Examples:
        t^2 - 2 mod 3 -> [2]
        t^2 - 2 mod 7 -> [1, 1]
    """
    f = _reduce(coeffs, p)
    if len(f) != len(coeffs):
        return None
    deriv = _derivative(f, p)
    if not deriv or len(_gcd(f, deriv, p)) > 1:
        return None
    f = _monic(f, p)
    degrees: list[int] = []
    x = [0, 1]
    h = x
    k = 1
    while len(f) - 1 >= 2 * k:
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, x, p), p)
        gd = len(g) - 1
        if gd > 0:
            degrees.extend([k] * (gd // k))
            f = _divmod(f, g, p)[0]
            h = _divmod(h, f, p)[1]
        k += 1
    if len(f) - 1 > 0:
        degrees.append(len(f) - 1)
    return sorted(degrees)


def _subset_sums(degrees: list[int]) -> set[int]:
    return reduce(lambda acc, d: acc | {s + d for s in acc}, degrees, {0})


def is_irreducible(poly: Polynomial, prime_count: int = 12) -> bool:
    """
    Certify irreducibility over Q from factorization patterns modulo primes.

    A rational factor of degree e needs a subset of every pattern summing to
    e. When no e in [1, deg - 1] survives across the primes tried, the
    polynomial is irreducible. False means "not proved", never "reducible".
    """
    coeffs = poly.integral_primitive().integer_coefficients()
    degree = len(coeffs) - 1
    if degree <= 1:
        return degree == 1
    candidates = set(range(1, degree))
    used = 0
    for p in small_primes():
        if used >= prime_count or p > 10_000:
            break
        pattern = degree_pattern(coeffs, p)
        if pattern is None:
            continue
        used += 1
        candidates &= _subset_sums(pattern)
        if not candidates:
            logger.debug("irreducibility proved at p=%d for degree %d", p, degree)
            return True
    logger.debug("irreducibility not proved after %d primes; degrees %s remain", used, sorted(candidates))
    return False
