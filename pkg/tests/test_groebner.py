"""Tests for the Buchberger oracle."""

from fractions import Fraction

import pytest
from sympy import QQ
from sympy.polys.groebnertools import groebner as sympy_groebner
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

from pfaffian_atlas.errors import BudgetExceededError, CapExceededError, InvalidInputError, PreconditionError
from pfaffian_atlas.groebner import (
    buchberger,
    certify_basis,
    in_monomial_ideal,
    leading_monomials,
    monomial_span_equal,
    normal_form,
    s_polynomial,
)
from pfaffian_atlas.ideals import CogeneratorSpec, generator_adiags, generator_polynomials, initial_ideal_generators
from pfaffian_atlas.pfaffian_core import Monomial, Polynomial, upper_grid


def X(i, j):
    return Monomial.variable(i, j)


@pytest.fixture
def two_variable_ideal():
    # x = X[1,3] > y = X[1,2]; generators xy - 1 and y^2 - 1
    x, y = Polynomial.variable(1, 3), Polynomial.variable(1, 2)
    one = Polynomial.constant(1)
    return [x * y - one, y * y - one]


def test_normal_form():
    x, y = Polynomial.variable(1, 3), Polynomial.variable(1, 2)
    one = Polynomial.constant(1)
    assert normal_form(x * y - one, [x - y]) == y * y - one
    assert normal_form(x * y - one, [x * y - one]).is_zero()
    assert normal_form(y, [x]) == y


def test_s_polynomial(two_variable_ideal):
    f, g = two_variable_ideal
    assert s_polynomial(f, g) == Polynomial.variable(1, 3) - Polynomial.variable(1, 2)


def test_monomial_ideal_helpers():
    assert in_monomial_ideal(X(1, 3) * X(2, 4), [X(2, 4)])
    assert not in_monomial_ideal(X(1, 3), [X(1, 3) ** 2])
    assert monomial_span_equal([X(1, 2), X(1, 2) * X(3, 4)], [X(1, 2)])
    assert not monomial_span_equal([X(1, 2)], [X(1, 3)])


def test_buchberger_small(two_variable_ideal):
    computation = buchberger(two_variable_ideal)
    assert computation.is_complete
    assert computation.pairs_processed == 2
    assert computation.pairs_pruned == 1
    assert monomial_span_equal(computation.leading_monomials, [X(1, 3), X(1, 2) ** 2])
    assert certify_basis(computation.computed_basis) is None


def test_certify_basis_reports_failure(two_variable_ideal):
    failure = certify_basis(two_variable_ideal)
    assert failure is not None
    assert (failure.i, failure.j) == (0, 1)
    assert failure.remainder == Polynomial.variable(1, 3) - Polynomial.variable(1, 2)


def test_budget_and_resume(two_variable_ideal):
    with pytest.raises(BudgetExceededError) as excinfo:
        buchberger(two_variable_ideal, max_pairs=1)
    partial = excinfo.value.partial
    assert excinfo.value.pairs_processed == 1
    assert not partial.is_complete
    resumed = buchberger([], max_pairs=10, resume=partial)
    assert resumed.is_complete
    assert len(resumed.computed_basis) == 3


def test_buchberger_guards(two_variable_ideal):
    with pytest.raises(InvalidInputError):
        buchberger([Polynomial.zero()])
    with pytest.raises(CapExceededError):
        buchberger(two_variable_ideal, max_generators=1)
    with pytest.raises(PreconditionError):
        buchberger(two_variable_ideal, max_n=2)


def test_g_pfaffian_generators_form_basis(spec_1346):
    computation = buchberger(generator_polynomials(spec_1346))
    leading = computation.leading_monomials
    assert monomial_span_equal(leading, generator_adiags(spec_1346).values())
    assert monomial_span_equal(leading, initial_ideal_generators(spec_1346))
    assert certify_basis(generator_polynomials(spec_1346)) is None


def test_non_g_pfaffian_generators_are_not_a_basis(spec_1245):
    gens = generator_polynomials(spec_1245)
    assert certify_basis(gens) is not None
    leading = buchberger(gens).leading_monomials
    assert not monomial_span_equal(leading, leading_monomials(gens))
    assert in_monomial_ideal(X(1, 3) * X(1, 5) * X(2, 4), leading)


def _sympy_leading_monomials(polys, n):
    """Leading monomials of a reduced basis computed by sympy's groebnertools."""
    points = sorted(upper_grid(n), key=lambda p: (p[0], -p[1]))
    ring_, *gens = ring([f"X{i}_{j}" for i, j in points], QQ, lex)
    index = {p: k for k, p in enumerate(points)}
    converted = []
    for p in polys:
        element = ring_.zero
        for monomial, coeff in p.terms.items():
            c = Fraction(coeff)
            term = ring_(QQ(c.numerator, c.denominator))
            for point, e in monomial.exps:
                term *= gens[index[point]] ** e
            element += term
        converted.append(element)
    basis = sympy_groebner(converted, ring_)
    return [Monomial({points[k]: e for k, e in enumerate(g.LM) if e}) for g in basis]


def test_sympy_agrees_on_small_ideal(two_variable_ideal):
    ours = buchberger(two_variable_ideal).leading_monomials
    assert monomial_span_equal(ours, _sympy_leading_monomials(two_variable_ideal, 3))


@pytest.mark.parametrize("alpha", [(1, 3, 4, 6), (1, 2, 4, 5), (1, 2, 3, 5), (2, 3, 4, 6)])
def test_sympy_agrees_on_pfaffian_ideals(alpha):
    spec = CogeneratorSpec(alpha=alpha, n=6)
    gens = generator_polynomials(spec)
    ours = buchberger(gens).leading_monomials
    assert monomial_span_equal(ours, _sympy_leading_monomials(gens, 6))
