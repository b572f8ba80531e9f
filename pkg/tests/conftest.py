# ABOUTME: Pytest fixtures and configuration
# ABOUTME: Provides settings, catalog fields and the reference square-root-of-two volume

import logging

import pytest

from app.config import Settings
from app.services.catalog import quadratic_field, real_cyclotomic_field
from app.services.number_field import make_field
from app.utils.parsing import parse_polynomial


def poly(text: str):
    """Shorthand for building polynomials in tests."""
    return parse_polynomial(text)


@pytest.fixture(autouse=True)
def restore_logging():
    """The CLI points the root logger at the captured stderr; undo that after each test."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def settings():
    """Default engine settings."""
    return Settings()


@pytest.fixture
def sqrt2_field():
    """Q(sqrt 2) from the catalog."""
    return quadratic_field(2)


@pytest.fixture
def sqrt3_field():
    """Q(sqrt 3) from the catalog."""
    return quadratic_field(3)


@pytest.fixture
def cubic_field():
    """The real subfield of Q(zeta_7), defining polynomial t^3 + t^2 - 2t - 1."""
    return real_cyclotomic_field(7)


@pytest.fixture
def quartic_field():
    """The real subfield of Q(zeta_15), of degree 4."""
    return real_cyclotomic_field(15)


@pytest.fixture
def rational_field():
    """The degree-1 field Q presented as Q[t]/(t - 2)."""
    return make_field(poly("x-2"))


@pytest.fixture
def sqrt2_volume(sqrt2_field):
    """The exact volume for alpha = sqrt 2, t0 = 2."""
    from app.services.volume import ConstructionInput, cutkosky_volume

    return cutkosky_volume(ConstructionInput(sqrt2_field, sqrt2_field.generator(), 2))
