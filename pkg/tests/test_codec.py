"""Tests for the JSON codec."""

import json
from fractions import Fraction

import pytest

from pfaffian_atlas.codec import (
    dumps,
    monomial_from_json,
    monomial_to_json,
    polynomial_from_json,
    polynomial_to_json,
    rational_from_json,
    rational_to_json,
)
from pfaffian_atlas.errors import InvalidInputError
from pfaffian_atlas.pfaffian_core import Monomial, pfaffian_polynomial
from pfaffian_atlas.tableaux import Tableau


def test_rationals():
    assert rational_to_json(Fraction(-3, 6)) == "-1/2"
    assert rational_to_json(2) == "2/1"
    assert rational_from_json("4/6") == Fraction(2, 3)
    with pytest.raises(InvalidInputError):
        rational_from_json("1/0")


def test_monomial_format():
    m = Monomial.variable(2, 5) ** 2 * Monomial.variable(1, 3)
    assert monomial_to_json(m) == [[[1, 3], 1], [[2, 5], 2]]
    assert monomial_from_json([[[2, 5], 2], [[1, 3], 1]]) == m
    with pytest.raises(InvalidInputError):
        monomial_from_json([[[3, 3], 1]])
    with pytest.raises(InvalidInputError):
        monomial_from_json([[[1, 3], 0]])


def test_polynomial_format():
    p = pfaffian_polynomial([1, 2, 3, 4], 4)
    data = polynomial_to_json(p)
    assert data[0] == {"coeff": "1/1", "monomial": [[[1, 4], 1], [[2, 3], 1]]}
    assert data[1]["coeff"] == "-1/1"
    assert polynomial_from_json(data) == p
    with pytest.raises(InvalidInputError):
        polynomial_from_json([{"monomial": []}])


def test_dumps_is_deterministic():
    payload = {"b": Fraction(1, 2), "a": Tableau(columns=((1, 2),)), "m": Monomial.variable(1, 2)}
    text = dumps(payload)
    assert text == dumps(dict(reversed(list(payload.items()))))
    assert json.loads(text) == {"a": {"columns": [[1, 2]]}, "b": "1/2", "m": [[[1, 2], 1]]}
