from __future__ import annotations
from fractions import Fraction
import pytest
from hypothesis import given
from app.domain.constraints import (
    AtomKind,
    CoeffSeq,
    EMPTY_ATOM,
    FULL_ATOM,
    Point,
    atom_eval,
    canonicalize_atom,
    mk_diagonal,
    mk_hyperplane,
)
from tests.strategies import atoms, nonzero_rationals, points, rationals


def test_pof_atom_text() -> None:
    assert mk_hyperplane(0, CoeffSeq.of({}, 1)).text == "[0 ; | 1]"

def test_diagonal_text() -> None:
    assert mk_diagonal(0, 1).text == "[0 ; 0:1 1:-1 | 0]"

def test_diagonal_on_itself_is_full() -> None:
    assert mk_diagonal(2, 2) == FULL_ATOM

def test_canonical_form_scales_leading_coefficient_to_one() -> None:
    # given
    atom = mk_hyperplane(4, CoeffSeq.of({0: 2, 1: 4}, 0))

    # then
    assert atom.text == "[2 ; 0:1 1:2 | 0]"

def test_tail_is_leading_when_no_explicit_entry() -> None:
    assert mk_hyperplane(3, CoeffSeq.of({}, 2)).text == "[3/2 ; | 1]"

def test_explicit_entries_equal_to_tail_are_pruned() -> None:
    coeffs = CoeffSeq.of({0: 1, 1: 2}, 1)

    assert coeffs.explicit == ((1, Fraction(2)),)
    assert coeffs.at(0) == 1
    assert coeffs.at(99) == 1

def test_zero_coefficients_give_full_or_empty() -> None:
    assert mk_hyperplane(0, CoeffSeq.of({3: 0}, 0)) == FULL_ATOM
    assert mk_hyperplane(5, CoeffSeq.of({}, 0)) == EMPTY_ATOM
    assert FULL_ATOM.kind is AtomKind.FULL
    assert EMPTY_ATOM.kind is AtomKind.EMPTY

def test_atom_eval_sums_over_finite_support() -> None:
    a5 = mk_hyperplane(5, CoeffSeq.of({}, 1))

    assert atom_eval(a5, Point.of({0: 2, 7: 3}))
    assert not atom_eval(a5, Point.of({0: 2}))

def test_point_drops_zero_entries_and_rejects_negative_coordinates() -> None:
    assert Point.of({0: 0, 2: 1}).entries == ((2, Fraction(1)),)
    assert Point.of({1: Fraction(1, 2)}).render() == "{1:1/2}"
    with pytest.raises(ValueError):
        Point.of({-1: 1})

@given(atoms())
def test_canonicalize_is_idempotent(atom) -> None:
    assert canonicalize_atom(atom) == atom

@given(atoms(), nonzero_rationals, points())
def test_scaling_gives_the_same_canonical_atom(atom, q, point) -> None:
    # given
    scaled = mk_hyperplane(atom.rhs * q, atom.coeffs.scaled(q))

    # then
    assert scaled == atom
    assert scaled.evaluate(point) == atom.evaluate(point)

@given(rationals, rationals)
def test_minus_is_coordinatewise(c: Fraction, factor: Fraction) -> None:
    left = CoeffSeq.of({0: c, 1: 1}, 1)
    right = CoeffSeq.of({0: 1}, 0)

    result = left.minus(right, factor)

    assert result.at(0) == c - factor
    assert result.at(1) == 1
    assert result.tail == 1
