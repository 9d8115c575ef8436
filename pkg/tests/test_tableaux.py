"""Tests for tableaux, KRS, BKRS and its inverse."""

import pytest
from pydantic import ValidationError

from pfaffian_atlas.errors import InvalidInputError
from pfaffian_atlas.pfaffian_core import Monomial
from pfaffian_atlas.tableaux import (
    Tableau,
    TwoLinedArray,
    bkrs,
    bkrs_inverse,
    bkrs_trace,
    delete,
    enumerate_standard_tableaux,
    first_column_discipline,
    is_standard,
    krs,
    monomial_width,
    width,
)


def X(i, j):
    return Monomial.variable(i, j)


def test_tableau_views(example_tableau):
    assert example_tableau.rows == [[1, 2, 2], [3, 3, 5], [4], [5]]
    assert example_tableau.shape == (3, 3, 1, 1)
    assert example_tableau.length == 4
    assert example_tableau.cells == 8
    assert example_tableau.is_d_tableau
    assert is_standard(example_tableau)
    assert Tableau.from_rows(example_tableau.rows) == example_tableau


@pytest.mark.parametrize("columns", [((2, 1),), ((1, 2), (1, 2, 3)), ((0, 1),)])
def test_tableau_rejects_malformed_columns(columns):
    with pytest.raises(ValidationError):
        Tableau(columns=columns)


def test_is_standard_detects_row_descent():
    assert not is_standard(Tableau(columns=((2, 3), (1, 4))))


def test_two_lined_array_order():
    with pytest.raises(ValidationError):
        TwoLinedArray(pairs=((3, 1), (4, 2)))
    with pytest.raises(ValidationError):
        TwoLinedArray(pairs=((3, 2), (3, 1)))
    a = TwoLinedArray.from_pairs([(3, 2), (4, 1), (3, 1)])
    assert a.pairs == ((4, 1), (3, 1), (3, 2))


def test_array_from_monomial():
    a = TwoLinedArray.from_monomial(X(2, 5) ** 2 * X(3, 4) * X(1, 3))
    assert a.pairs == ((5, 2), (5, 2), (4, 3), (3, 1))
    assert a.is_bkrs_format
    assert a.monomial == X(2, 5) ** 2 * X(3, 4) * X(1, 3)


def test_diagonal_pair_has_no_monomial():
    with pytest.raises(InvalidInputError):
        TwoLinedArray(pairs=((2, 2),)).monomial


def test_delete(example_tableau):
    v, rest = delete(example_tableau, 5)
    assert v == 2
    assert rest == Tableau(columns=((1, 3, 4, 5), (2, 3), (5,)))


def test_delete_requires_corner(example_tableau):
    with pytest.raises(InvalidInputError):
        delete(example_tableau, 3)


def test_bkrs_example(example_tableau):
    a = bkrs(example_tableau)
    assert a.pairs == ((5, 2), (5, 2), (4, 3), (3, 1))
    assert a.monomial == X(2, 5) ** 2 * X(3, 4) * X(1, 3)


def test_krs_example(example_tableau):
    a = krs(example_tableau, example_tableau)
    assert a.monomial == X(2, 5) ** 4 * X(3, 4) ** 2 * X(1, 3) ** 2
    assert a.monomial == bkrs(example_tableau).monomial ** 2


def test_krs_shape_mismatch(example_tableau):
    with pytest.raises(InvalidInputError):
        krs(example_tableau, Tableau(columns=((1, 2),)))


def test_bkrs_rejects_odd_columns():
    with pytest.raises(InvalidInputError):
        bkrs(Tableau(columns=((1, 2, 3),)))


def test_bkrs_trace(example_tableau):
    trace = bkrs_trace(example_tableau)
    assert [step.u for step in trace] == [5, 5, 4, 3]
    assert first_column_discipline(trace)
    assert all(step.u > step.v for step in trace)


def test_single_column_gives_adiag():
    a = bkrs(Tableau(columns=((1, 2, 4, 5),)))
    assert a.monomial == X(1, 5) * X(2, 4)


def test_width(example_tableau):
    assert width(bkrs(example_tableau)) == 2
    assert width(krs(example_tableau, example_tableau)) == 4
    assert monomial_width(X(1, 6) * X(2, 5) * X(3, 4)) == 3
    assert monomial_width(X(1, 2) * X(3, 4)) == 1


def test_width_reads_tied_tops_once():
    # X[1,3]*X[2,3] shares column 3, so it holds no 2-adiag
    t = Tableau(columns=((1, 3), (2, 3)))
    a = bkrs(t)
    assert a.pairs == ((3, 1), (3, 2))
    assert width(a) == t.length // 2 == 1
    assert monomial_width(X(1, 3) * X(2, 3)) == 1
    assert width(TwoLinedArray(pairs=((4, 1), (3, 1), (3, 2)))) == 2


def test_inverse_example(example_tableau):
    assert bkrs_inverse(bkrs(example_tableau)) == example_tableau
    assert bkrs_inverse(TwoLinedArray(pairs=((2, 1), (2, 1)))) == Tableau(columns=((1, 2), (1, 2)))


def test_inverse_rejects_wrong_format():
    with pytest.raises(InvalidInputError):
        bkrs_inverse(TwoLinedArray(pairs=((2, 3),)))


def test_corpus_small_counts():
    assert enumerate_standard_tableaux(2, 2) == [Tableau(), Tableau(columns=((1, 2),))]
    assert len(enumerate_standard_tableaux(3, 2)) == 4


def test_corpus_is_standard(small_corpus):
    assert all(t.is_d_tableau and is_standard(t) for t in small_corpus)
    assert len(set(small_corpus)) == len(small_corpus)


def test_squaring_law(small_corpus):
    for t in small_corpus:
        assert krs(t, t).monomial == bkrs(t).monomial ** 2


def test_width_law(small_corpus):
    for t in small_corpus:
        assert width(bkrs(t)) == t.length // 2
        assert width(krs(t, t)) == t.length


def test_roundtrip(small_corpus):
    images = set()
    for t in small_corpus:
        a = bkrs(t)
        assert a not in images
        images.add(a)
        assert first_column_discipline(bkrs_trace(t))
        assert bkrs_inverse(a) == t


@pytest.mark.slow
def test_laws_on_full_corpus():
    corpus = enumerate_standard_tableaux(6, 8)
    for t in corpus:
        a = bkrs(t)
        assert krs(t, t).monomial == a.monomial ** 2
        assert width(a) == t.length // 2
        assert width(krs(t, t)) == t.length
        assert bkrs_inverse(a) == t
