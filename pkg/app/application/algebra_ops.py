from __future__ import annotations
import logging
from enum import Enum
from fractions import Fraction
from collections.abc import Iterable
from app.application.qe_engine import (
    cell_sat,
    difference,
    eliminate_finite,
    eliminate_tail,
    equal,
)
from app.domain.constraints import Atom, CoeffSeq, Point, ZERO, canonicalize_atom, mk_diagonal
from app.domain.elements import Cell, EMPTY, Element, FULL, Literal
from app.domain.transformations import DimSet, GammaKind, GammaSpec, Transformation


logger = logging.getLogger(__name__)


class BooleanOp(Enum):
    JOIN = "join"
    MEET = "meet"
    COMPLEMENT = "complement"


def normalize(x: Element) -> Element:
    """Drop unsatisfiable cells; a satisfiable empty cell absorbs the element."""

    return Element.of(cell for cell in x.cells if cell_sat(cell).satisfiable)

def boolean(op: BooleanOp, x: Element, y: Element | None = None) -> Element:
    if op is BooleanOp.COMPLEMENT:
        if y is not None:
            raise ValueError("complement takes a single operand")
        return difference(FULL, x)
    if y is None:
        raise ValueError(f"{op.value} takes two operands")

    if op is BooleanOp.JOIN:
        return normalize(Element.of(x.cells + y.cells))
    return normalize(Element.of(xc.meet(yc) for xc in x.cells for yc in y.cells))

def join(x: Element, y: Element) -> Element:
    return boolean(BooleanOp.JOIN, x, y)

def meet(x: Element, y: Element) -> Element:
    return boolean(BooleanOp.MEET, x, y)

def complement(x: Element) -> Element:
    return boolean(BooleanOp.COMPLEMENT, x)


def _cylindrify_cell(cell: Cell, gamma: GammaSpec) -> Cell:
    if gamma.kind is GammaKind.FINITE:
        return eliminate_finite(cell, gamma.coords)
    # cofinite: quantify explicit coordinates outside the retained set, then the tail
    outside = sorted(i for i in cell.support if i not in gamma.coords)
    return eliminate_tail(eliminate_finite(cell, outside))

def cylindrify(x: Element, gamma: GammaSpec) -> Element:
    """c_(gamma) x, distributed over the cells of x."""

    if x.is_zero:
        return EMPTY
    cells = [cell for cell in x.cells if cell_sat(cell).satisfiable]
    return normalize(Element.of(_cylindrify_cell(cell, gamma) for cell in cells))

def dual_cylindrify(x: Element, gamma: GammaSpec) -> Element:
    return complement(cylindrify(complement(x), gamma))


def substitute_atom(atom: Atom, t: Transformation) -> Atom:
    """Pushforward of coefficients along t: new r_j = sum of r_i over t(i) = j."""

    domain = atom.support | t.domain
    pushed: dict[int, Fraction] = {j: ZERO for j in domain}
    for i in domain:
        pushed[t(i)] += atom.coeffs.at(i)
    return canonicalize_atom(Atom(CoeffSeq.of(pushed, atom.coeffs.tail), atom.rhs))

def substitute(x: Element, t: Transformation) -> Element:
    """s_t x = {s : s o t in x}."""

    if not t.moved:
        return x
    cells = (
        Cell.build(Literal(substitute_atom(lit.atom, t), lit.positive) for lit in cell.literals)
        for cell in x.cells
    )
    return normalize(Element.of(cells))

def substitute_point(point: Point, t: Transformation) -> Point:
    return t.pull(point)

def swap(x: Element, i: int, j: int) -> Element:
    return substitute(x, Transformation.transposition(i, j))


def diagonal(i: int, j: int) -> Element:
    return Element.from_atom(mk_diagonal(i, j))

def hyperplane(atom: Atom) -> Element:
    return Element.from_atom(atom)


def is_independent_of(x: Element, coords: Iterable[int]) -> bool:
    return equal(cylindrify(x, GammaSpec.finite(coords)), x)

def dim_set(x: Element) -> DimSet:
    """Delta x = {i : c_i x != x}, finite or cofinite.

        Every coordinate above the explicit support behaves like a single probe
        coordinate, which decides the tail membership.
        """

    support = sorted(x.support)
    inside = {i for i in support if not is_independent_of(x, [i])}
    probe = support[-1] + 1 if support else 0
    tail_member = not is_independent_of(x, [probe])
    logger.debug("dim_set probe %d -> tail_member=%s", probe, tail_member)
    if tail_member:
        return DimSet(frozenset(i for i in support if i not in inside), True)
    return DimSet(frozenset(inside), False)
