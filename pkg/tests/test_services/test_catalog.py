# ABOUTME: Tests for the catalog of totally real Galois fields
# ABOUTME: Cyclotomic polynomials, real cyclotomic subfields and Gaussian period fields

import pytest

from app.models.errors import InvalidInputError
from app.services.catalog import (
    catalog_field,
    cyclotomic_polynomial,
    euler_phi,
    palindromic_reduction,
    period_field,
    quadratic_field,
    real_cyclotomic_field,
    smallest_period_conductor,
)
from app.utils.polynomials import Polynomial
from tests.conftest import poly


def test_cyclotomic_polynomials():
    """Small cyclotomic polynomials by exact division."""
    assert cyclotomic_polynomial(1) == poly("x-1")
    assert cyclotomic_polynomial(2) == poly("x+1")
    assert cyclotomic_polynomial(7) == Polynomial([1] * 7)
    assert cyclotomic_polynomial(15) == poly("x^8 - x^7 + x^5 - x^4 + x^3 - x + 1")
    assert cyclotomic_polynomial(12).degree == euler_phi(12) == 4


def test_cyclotomic_polynomial_rejects_zero():
    """Indices start at 1."""
    with pytest.raises(InvalidInputError):
        cyclotomic_polynomial(0)


def test_palindromic_reduction_requires_palindrome():
    """Only palindromic polynomials of even degree reduce."""
    with pytest.raises(InvalidInputError):
        palindromic_reduction(poly("x^2+2*x+3"))
    with pytest.raises(InvalidInputError):
        palindromic_reduction(poly("x^3+1"))


@pytest.mark.parametrize(
    "n, expected",
    [
        (5, "x^2 + x - 1"),
        (7, "x^3 + x^2 - 2*x - 1"),
        (11, "x^5 + x^4 - 4*x^3 - 3*x^2 + 3*x + 1"),
        (15, "x^4 - x^3 - 4*x^2 + 4*x + 1"),
    ],
)
def test_real_cyclotomic_fields(n, expected):
    """Minimal polynomials of 2*cos(2*pi/n)."""
    nf = real_cyclotomic_field(n)

    assert nf.defining_poly == poly(expected)
    assert nf.degree == euler_phi(n) // 2
    assert nf.totally_real
    assert nf.galois_attested
    assert len(nf.real_roots) == nf.degree


@pytest.mark.parametrize("n", [1, 4, 6])
def test_real_cyclotomic_rejects_small_indices(n):
    """n < 5 and n = 6 give Q."""
    with pytest.raises(InvalidInputError):
        real_cyclotomic_field(n)


def test_quadratic_field():
    """Q(sqrt D) needs squarefree D >= 2."""
    nf = quadratic_field(6)
    assert nf.defining_poly == poly("x^2-6")
    assert nf.totally_real and nf.galois_attested

    for bad in (1, 4, 12, -3):
        with pytest.raises(InvalidInputError):
            quadratic_field(bad)


def test_period_field_matches_real_cyclotomic():
    """The cubic period field of conductor 7 is Q(zeta_7)^+."""
    assert period_field(7, 3).defining_poly == real_cyclotomic_field(7).defining_poly


def test_period_field_with_odd_subgroup_is_imaginary():
    """The quadratic period of conductor 7 generates Q(sqrt -7)."""
    nf = period_field(7, 2)

    assert nf.defining_poly == poly("x^2+x+2")
    assert not nf.totally_real


def test_period_field_degree_seven():
    """The degree-7 field of conductor 29 is totally real; its periods sum to -1."""
    nf = period_field(29, 7)

    assert nf.degree == 7
    assert nf.totally_real
    assert len(nf.real_roots) == 7
    assert nf.defining_poly.coefficient(6) == 1


def test_period_field_validation():
    """Conductor must be prime and the degree must divide conductor - 1."""
    with pytest.raises(InvalidInputError):
        period_field(9, 3)
    with pytest.raises(InvalidInputError):
        period_field(7, 4)


def test_smallest_period_conductor():
    """Smallest prime congruent to 1 mod 2k."""
    assert smallest_period_conductor(3) == 7
    assert smallest_period_conductor(5) == 11
    assert smallest_period_conductor(7) == 29


def test_catalog_field_dispatch():
    """The three families are reachable by name."""
    assert catalog_field("quadratic", 2).defining_poly == poly("x^2-2")
    assert catalog_field("cyclotomic", 7).degree == 3
    assert catalog_field("period", 11, 5).degree == 5

    with pytest.raises(InvalidInputError):
        catalog_field("cubic", 7)
