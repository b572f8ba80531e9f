# ABOUTME: Tests for factorization patterns modulo primes
# ABOUTME: Irreducibility is proved, or left unproved, never wrongly claimed

from itertools import islice

from app.utils.modular import degree_pattern, is_irreducible, small_primes
from tests.conftest import poly


def test_small_primes():
    """The generator yields primes in order."""
    assert list(islice(small_primes(), 8)) == [2, 3, 5, 7, 11, 13, 17, 19]


def test_degree_pattern_examples():
    """t^2 - 2 is inert mod 3 and splits mod 7."""
    assert degree_pattern([-2, 0, 1], 3) == [2]
    assert degree_pattern([-2, 0, 1], 7) == [1, 1]


def test_degree_pattern_skips_bad_primes():
    """Primes dividing the leading coefficient or the discriminant give None."""
    assert degree_pattern([1, 0, 3], 3) is None
    assert degree_pattern([-2, 0, 1], 2) is None


def test_degree_pattern_of_cubic():
    """t^3 - 2 has one root mod 5 and none mod 7."""
    assert degree_pattern([-2, 0, 0, 1], 5) == [1, 2]
    assert degree_pattern([-2, 0, 0, 1], 7) == [3]


def test_is_irreducible_proves_irreducible_polynomials():
    """Classical irreducible polynomials are certified."""
    assert is_irreducible(poly("x^2-2"))
    assert is_irreducible(poly("x^3-2"))
    assert is_irreducible(poly("x^3+x^2-2*x-1"))
    assert is_irreducible(poly("9*x^2+24*x-16"))
    assert is_irreducible(poly("x-5"))


def test_is_irreducible_never_certifies_reducible_polynomials():
    """Products of factors are not proved irreducible."""
    assert not is_irreducible(poly("x^2-2") * poly("x^2-3"))
    assert not is_irreducible(poly("x-1") * poly("x+1"))


def test_is_irreducible_may_leave_hard_cases_unproved():
    """t^4 + 1 splits modulo every prime, so the test cannot certify it."""
    assert not is_irreducible(poly("x^4+1"))
