# ABOUTME: Text grammar for rationals, polynomials and field coordinates
# ABOUTME: Parses CLI arguments and renders polynomials in the same grammar

import re
from fractions import Fraction

from app.models.errors import InvalidInputError
from app.utils.polynomials import Polynomial

_TERM = re.compile(
    r"(?P<sign>[+-])?"
    r"(?P<coef>\d+(?:/\d+)?)?"
    r"(?P<star>\*)?"
    r"(?:(?P<var>[a-z])(?:\^(?P<exp>\d+))?)?"
)

_VARIABLES = ("x", "t")


def parse_rational(text: str) -> Fraction:
    """
    Parse a rational written as an integer, a fraction or a decimal.

    Examples:
        "1/3" -> Fraction(1, 3)
        "-2" -> Fraction(-2)
        "1e-8" -> Fraction(1, 100000000)
    """
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational number: {text!r}") from exc


def format_rational(q: Fraction | int) -> str:
    """Canonical "num/den" rendering ("2" for integers)."""
    return str(Fraction(q))


def _parse_coefficient_list(text: str) -> Polynomial:
    parts = [part for part in text.split(",")]
    if any(not part.strip() for part in parts):
        raise InvalidInputError(f"empty coefficient in {text!r}")
    return Polynomial(parse_rational(part) for part in parts)


def _parse_symbolic(text: str) -> Polynomial:
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise InvalidInputError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(terms) != compact:
        raise InvalidInputError(f"malformed polynomial: {text!r}")
    coefficients: dict[int, Fraction] = {}
    seen_var: str | None = None
    for term in terms:
        match = _TERM.fullmatch(term)
        if match is None or (match["coef"] is None and match["var"] is None):
            raise InvalidInputError(f"malformed term {term!r} in {text!r}")
        if match["star"] and (match["coef"] is None or match["var"] is None):
            raise InvalidInputError(f"malformed term {term!r} in {text!r}")
        if match["exp"] is not None and match["var"] is None:
            raise InvalidInputError(f"malformed term {term!r} in {text!r}")
        var = match["var"]
        if var is not None:
            if var not in _VARIABLES:
                raise InvalidInputError(f"unknown variable {var!r}; use x or t")
            if seen_var is not None and var != seen_var:
                raise InvalidInputError(f"mixed variables in {text!r}")
            seen_var = var
        coef = Fraction(match["coef"]) if match["coef"] is not None else Fraction(1)
        if match["sign"] == "-":
            coef = -coef
        power = 0 if var is None else int(match["exp"] or 1)
        coefficients[power] = coefficients.get(power, Fraction(0)) + coef
    top = max(coefficients)
    return Polynomial(coefficients.get(i, Fraction(0)) for i in range(top + 1))


def parse_polynomial(text: str) -> Polynomial:
    """
    Parse a polynomial from its textual form.

    Accepts either comma-separated coefficients from low to high degree, or a
    symbolic sum of terms in x or t.

    Examples:
        "-2,0,1" -> t^2 - 2
        "x^2-2" -> t^2 - 2
        "1/3*x^3 - 2*x" -> t^3/3 - 2t
    """
    if text is None or not str(text).strip():
        raise InvalidInputError("empty polynomial")
    text = str(text)
    if "," in text:
        return _parse_coefficient_list(text)
    return _parse_symbolic(text)


def format_polynomial(p: Polynomial, var: str = "x") -> str:
    """
    Render from high to low degree; parse_polynomial reads it back unchanged.

    Examples:
        t^3/3 - 2t -> "1/3*x^3 - 2*x"
    """
    if p.is_zero:
        return "0"
    pieces = []
    for i in range(p.degree, -1, -1):
        c = p.coefficients[i]
        if c == 0:
            continue
        magnitude = abs(c)
        if i == 0:
            body = format_rational(magnitude)
        else:
            power = var if i == 1 else f"{var}^{i}"
            body = power if magnitude == 1 else f"{format_rational(magnitude)}*{power}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(pieces)


def parse_coordinates(text: str) -> list[Fraction]:
    """
    Parse field-element coordinates in the power basis.

    Examples:
        "0,1" -> [0, 1]
        "x" -> [0, 1]
    """
    return list(parse_polynomial(text).coefficients)
