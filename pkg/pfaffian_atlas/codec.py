"""
JSON codec for monomials, polynomials and report payloads.
"""

import json
import logging
from fractions import Fraction
from typing import Any, Iterable, List

from pydantic import BaseModel

from pfaffian_atlas.errors import InvalidInputError
from pfaffian_atlas.pfaffian_core import Monomial, Polynomial, lattice_point

logger = logging.getLogger(__name__)


def rational_to_json(value: Fraction) -> str:
    """Rationals are written as "p/q", always with a denominator."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def rational_from_json(text: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"invalid rational {text!r}: {e}") from e


def monomial_to_json(m: Monomial) -> List[list]:
    return [[[i, j], e] for (i, j), e in m.exps]


def monomial_from_json(data: Iterable[Any]) -> Monomial:
    try:
        entries = [(lattice_point(point), int(e)) for point, e in data]
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"malformed monomial {data!r}: {e}") from e
    if any(e < 1 for _, e in entries):
        raise InvalidInputError(f"monomial exponents must be positive: {data!r}")
    return Monomial(entries)


def polynomial_to_json(p: Polynomial) -> List[dict]:
    return [
        {"coeff": rational_to_json(c), "monomial": monomial_to_json(m)}
        for c, m in p.sorted_terms()
    ]


def polynomial_from_json(data: Iterable[dict]) -> Polynomial:
    terms = {}
    try:
        for entry in data:
            m = monomial_from_json(entry["monomial"])
            terms[m] = terms.get(m, 0) + rational_from_json(entry["coeff"])
    except (KeyError, TypeError) as e:
        raise InvalidInputError(f"malformed polynomial: {e}") from e
    return Polynomial(terms)


def to_jsonable(obj: Any) -> Any:
    """Convert library values (and containers of them) into JSON-ready data."""
    if isinstance(obj, Monomial):
        return monomial_to_json(obj)
    if isinstance(obj, Polynomial):
        return polynomial_to_json(obj)
    if isinstance(obj, Fraction):
        return rational_to_json(obj)
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, compact separators."""
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))
