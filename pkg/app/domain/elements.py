from __future__ import annotations
from dataclasses import dataclass
from functools import cached_property
from collections.abc import Iterable
from app.domain.constraints import Atom, AtomKind, EMPTY_ATOM, Point


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def negated(self) -> Literal:
        return Literal(self.atom, not self.positive)

    def holds(self, point: Point) -> bool:
        return self.atom.evaluate(point) == self.positive

    @cached_property
    def text(self) -> str:
        return self.atom.text if self.positive else "~" + self.atom.text

    @property
    def sort_key(self) -> tuple[int, str]:
        # positives first, then by atom rendering
        return (0 if self.positive else 1, self.atom.text)

    def is_vacuous(self) -> bool:
        kind = self.atom.kind
        return (kind is AtomKind.FULL and self.positive) or (kind is AtomKind.EMPTY and not self.positive)

    def is_killer(self) -> bool:
        kind = self.atom.kind
        return (kind is AtomKind.FULL and not self.positive) or (kind is AtomKind.EMPTY and self.positive)


@dataclass(frozen=True)
class Cell:
    """Conjunction of signed atoms; the empty conjunction is the full set."""

    literals: tuple[Literal, ...] = ()

    @classmethod
    def build(cls, literals: Iterable[Literal]) -> Cell:
        """Canonical cell: vacuous literals dropped, contradictions collapsed to BOTTOM_CELL."""

        kept: dict[Literal, None] = {}
        for lit in literals:
            if lit.is_killer():
                return BOTTOM_CELL
            if lit.is_vacuous():
                continue
            kept[lit] = None

        positives = {lit.atom for lit in kept if lit.positive}
        if any(not lit.positive and lit.atom in positives for lit in kept):
            return BOTTOM_CELL

        return cls(tuple(sorted(kept, key=lambda lit: lit.sort_key)))

    @property
    def is_bottom(self) -> bool:
        return self.literals == BOTTOM_CELL.literals

    @property
    def is_top(self) -> bool:
        return not self.literals

    @property
    def equations(self) -> list[Atom]:
        return [lit.atom for lit in self.literals if lit.positive]

    @property
    def disequations(self) -> list[Atom]:
        return [lit.atom for lit in self.literals if not lit.positive]

    @cached_property
    def support(self) -> frozenset[int]:
        coords: set[int] = set()
        for lit in self.literals:
            coords |= lit.atom.support
        return frozenset(coords)

    def holds(self, point: Point) -> bool:
        return all(lit.holds(point) for lit in self.literals)

    def meet(self, other: Cell) -> Cell:
        return Cell.build(self.literals + other.literals)

    @cached_property
    def text(self) -> str:
        if not self.literals:
            return "1"
        return " & ".join(lit.text for lit in self.literals)


TOP_CELL = Cell(())
BOTTOM_CELL = Cell((Literal(EMPTY_ATOM, True),))


@dataclass(frozen=True)
class Element:
    """Canonical disjunction of cells: a member of C = P(V) handled by the workbench.

        No duplicate cells, no syntactically unsatisfiable cell; the empty
        disjunction is 0 and a single empty cell is 1.
        """

    cells: tuple[Cell, ...] = ()

    @classmethod
    def of(cls, cells: Iterable[Cell]) -> Element:
        kept: dict[str, Cell] = {}
        for cell in cells:
            if cell.is_bottom:
                continue
            if cell.is_top:
                return FULL
            kept.setdefault(cell.text, cell)
        return cls(tuple(kept[key] for key in sorted(kept)))

    @classmethod
    def from_atom(cls, atom: Atom, positive: bool = True) -> Element:
        return cls.of([Cell.build([Literal(atom, positive)])])

    @property
    def is_zero(self) -> bool:
        return not self.cells

    @property
    def is_one(self) -> bool:
        return len(self.cells) == 1 and self.cells[0].is_top

    @cached_property
    def support(self) -> frozenset[int]:
        coords: set[int] = set()
        for cell in self.cells:
            coords |= cell.support
        return frozenset(coords)

    def atoms(self) -> list[Atom]:
        seen: dict[Atom, None] = {}
        for cell in self.cells:
            for lit in cell.literals:
                seen.setdefault(lit.atom, None)
        return list(seen)

    def holds(self, point: Point) -> bool:
        return any(cell.holds(point) for cell in self.cells)

    @cached_property
    def text(self) -> str:
        if not self.cells:
            return "0"
        return " | ".join(cell.text for cell in self.cells)

    def __str__(self) -> str:
        return self.text


EMPTY = Element(())
FULL = Element((TOP_CELL,))
