from __future__ import annotations
from fractions import Fraction
from hypothesis import strategies as st
from app.domain.constraints import Atom, CoeffSeq, Point, mk_hyperplane
from app.domain.elements import Cell, Element, Literal


# small instances: every equality check runs the exact engine

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)
nonzero_rationals = rationals.filter(lambda q: q != 0)
coordinates = st.integers(min_value=0, max_value=3)
tails = st.sampled_from([Fraction(0), Fraction(1)]) | rationals


@st.composite
def atoms(draw: st.DrawFn) -> Atom:
    explicit = draw(st.dictionaries(coordinates, rationals, max_size=3))
    return mk_hyperplane(draw(rationals), CoeffSeq.of(explicit, draw(tails)))

@st.composite
def literals(draw: st.DrawFn) -> Literal:
    return Literal(draw(atoms()), draw(st.booleans()))

@st.composite
def cells(draw: st.DrawFn, max_literals: int = 2) -> Cell:
    return Cell.build(draw(st.lists(literals(), min_size=1, max_size=max_literals)))

@st.composite
def elements(draw: st.DrawFn, max_cells: int = 2) -> Element:
    return Element.of(draw(st.lists(cells(), min_size=1, max_size=max_cells)))

@st.composite
def points(draw: st.DrawFn) -> Point:
    return Point.of(draw(st.dictionaries(st.integers(min_value=0, max_value=5), rationals, max_size=4)))

@st.composite
def coordinate_pairs(draw: st.DrawFn) -> tuple[int, int]:
    i = draw(coordinates)
    j = draw(coordinates.filter(lambda c: c != i))
    return i, j
