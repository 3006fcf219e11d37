from __future__ import annotations
from fractions import Fraction
import pytest
from hypothesis import given, settings
from app.application.qe_engine import (
    cell_sat,
    compare,
    difference,
    eliminate_finite,
    eliminate_tail,
    equal,
    is_empty,
    leq,
    witness,
)
from app.domain.constraints import Atom, CoeffSeq, Point, mk_diagonal, mk_hyperplane
from app.domain.elements import Cell, EMPTY, Element, FULL, Literal
from app.shared.errors import EngineInvariantError
from tests.strategies import cells, elements


def _a(n: int) -> Element:
    return Element.from_atom(mk_hyperplane(n, CoeffSeq.of({}, 1)))

def _coord_equals(i: int, value: int) -> Atom:
    return mk_hyperplane(value, CoeffSeq.of({i: 1}))


def test_distinct_sums_are_unsatisfiable_together() -> None:
    cell = Cell.build([Literal(mk_hyperplane(0, CoeffSeq.of({}, 1))), Literal(mk_hyperplane(1, CoeffSeq.of({}, 1)))])

    assert not cell_sat(cell).satisfiable

def test_tail_variable_lands_on_a_fresh_coordinate() -> None:
    # given: coordinates sum to 5 and s_0 = 2
    cell = Cell.build([Literal(mk_hyperplane(5, CoeffSeq.of({}, 1))), Literal(_coord_equals(0, 2))])

    # when
    result = cell_sat(cell)

    # then
    assert result.satisfiable
    assert result.witness == Point.of({0: 2, 1: 3})

def test_disequation_forced_to_its_excluded_value_is_unsatisfiable() -> None:
    # s_0 = 1, s_1 = 1 and s_0 != s_1
    cell = Cell.build([
        Literal(_coord_equals(0, 1)),
        Literal(_coord_equals(1, 1)),
        Literal(mk_diagonal(0, 1), False),
    ])

    assert not cell_sat(cell).satisfiable

def test_disequations_alone_are_satisfiable() -> None:
    cell = Cell.build([Literal(mk_diagonal(0, 1), False), Literal(_coord_equals(0, 0), False)])

    result = cell_sat(cell)

    assert result.satisfiable
    assert cell.holds(result.witness)

@settings(max_examples=150, deadline=None)
@given(cells(max_literals=3))
def test_every_sat_verdict_ships_a_witness(cell: Cell) -> None:
    result = cell_sat(cell)

    if result.satisfiable:
        assert result.witness is not None
        assert cell.holds(result.witness)

def test_broken_witness_raises_invariant_error(monkeypatch) -> None:
    # given: membership that rejects every point
    monkeypatch.setattr(Cell, "holds", lambda self, point: False)
    cell = Cell.build([Literal(mk_hyperplane(Fraction(1234, 7), CoeffSeq.of({5: 3})))])

    # then
    with pytest.raises(EngineInvariantError):
        cell_sat(cell)

def test_finite_elimination_of_a_pof_coordinate_gives_full() -> None:
    cell = Cell.build([Literal(mk_hyperplane(0, CoeffSeq.of({}, 1)))])

    assert eliminate_finite(cell, [0]).is_top

def test_finite_elimination_keeps_unrelated_equations() -> None:
    # given: s_0 = s_1 and s_1 = 2
    cell = Cell.build([Literal(mk_diagonal(0, 1)), Literal(_coord_equals(1, 2))])

    # when
    projected = eliminate_finite(cell, [1])

    # then: s_0 = 2
    assert projected == Cell.build([Literal(_coord_equals(0, 2))])

def test_tail_elimination_drops_the_sum_constraint() -> None:
    # given: coordinates sum to 0 and s_0 = 1
    cell = Cell.build([Literal(mk_hyperplane(0, CoeffSeq.of({}, 1))), Literal(_coord_equals(0, 1))])

    # when
    projected = eliminate_tail(cell)

    # then
    assert projected == Cell.build([Literal(_coord_equals(0, 1))])

def test_compare_reports_a_separating_witness() -> None:
    verdict = compare(_a(0), _a(1))

    assert not verdict.equal
    assert verdict.side == "left"
    assert _a(0).holds(verdict.witness)
    assert not _a(1).holds(verdict.witness)

def test_compare_right_side() -> None:
    x = Element.from_atom(mk_diagonal(0, 1))
    verdict = compare(EMPTY, x)

    assert verdict.side == "right"
    assert x.holds(verdict.witness)

def test_semantic_equality_of_different_texts() -> None:
    # given: an unsatisfiable cell kept syntactically
    unsat = Element.of([Cell.build([Literal(mk_hyperplane(0, CoeffSeq.of({}, 1))),
                                    Literal(mk_hyperplane(1, CoeffSeq.of({}, 1)))])])

    # then
    assert unsat.text != EMPTY.text
    assert equal(unsat, EMPTY)
    assert is_empty(unsat)
    assert witness(unsat) is None

def test_order() -> None:
    d01 = Element.from_atom(mk_diagonal(0, 1))
    both = Element.of([Cell.build([Literal(mk_hyperplane(0, CoeffSeq.of({}, 1))), Literal(mk_diagonal(0, 1))])])

    assert leq(both, d01)
    assert leq(both, _a(0))
    assert not leq(d01, both)
    assert leq(EMPTY, d01) and leq(d01, FULL)

@settings(max_examples=60, deadline=None)
@given(elements(), elements())
def test_difference_is_disjoint_from_the_subtrahend(x: Element, y: Element) -> None:
    diff = difference(x, y)

    assert leq(diff, x)
    point = witness(diff)
    if point is not None:
        assert x.holds(point) and not y.holds(point)

@settings(max_examples=60, deadline=None)
@given(elements())
def test_difference_with_itself_is_empty(x: Element) -> None:
    assert is_empty(difference(x, x))
