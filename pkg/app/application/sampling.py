from __future__ import annotations
import random
from dataclasses import dataclass
from fractions import Fraction
from collections.abc import Sequence
from app.application.algebra_ops import normalize
from app.domain.constraints import Atom, CoeffSeq, Point, mk_hyperplane
from app.domain.elements import Cell, Element, Literal
from app.domain.terms import (
    Cyl,
    Diag,
    Hyper,
    Join,
    Meet,
    Not,
    Pof,
    Subst,
    Swap,
    Term,
    Unit,
    Var,
)
from app.domain.transformations import GammaSpec, Transformation


# seeded random instances for properties and acceptance suites
@dataclass
class Sampler:
    rng: random.Random
    window: int = 8
    height: int = 8

    @classmethod
    def seeded(cls, seed: int, window: int = 8, height: int = 8) -> Sampler:
        return cls(random.Random(seed), window, height)

    def rational(self, nonzero: bool = False) -> Fraction:
        while True:
            value = Fraction(
                self.rng.randint(-self.height, self.height), self.rng.randint(1, self.height)
            )
            if value != 0 or not nonzero:
                return value

    def coords(self, low: int = 1, high: int = 3) -> list[int]:
        k = self.rng.randint(low, min(high, self.window))
        return sorted(self.rng.sample(range(self.window), k))

    def atom(self) -> Atom:
        """Mostly Pol-shaped (tail 0 or 1), occasionally an arbitrary rational tail."""

        roll = self.rng.random()
        tail = Fraction(0) if roll < 0.6 else Fraction(1) if roll < 0.9 else self.rational()
        explicit = {i: self.rational() for i in self.coords(0 if tail != 0 else 1)}
        return mk_hyperplane(self.rational(), CoeffSeq.of(explicit, tail))

    def cell(self, max_literals: int = 3) -> Cell:
        return Cell.build(
            Literal(self.atom(), self.rng.random() < 0.6)
            for _ in range(self.rng.randint(1, max_literals))
        )

    def element(self, max_cells: int = 2, max_literals: int = 3) -> Element:
        return Element.of(self.cell(max_literals) for _ in range(self.rng.randint(1, max_cells)))

    def nonzero_element(self, max_cells: int = 2, max_literals: int = 3) -> Element:
        while True:
            x = normalize(self.element(max_cells, max_literals))
            if not x.is_zero:
                return x

    def point(self, support: Sequence[int] | None = None) -> Point:
        coords = list(support) if support is not None else self.coords(0, self.window)
        return Point.of({i: self.rational() for i in coords})

    def transposition(self) -> tuple[int, int]:
        i, j = self.rng.sample(range(self.window), 2)
        return min(i, j), max(i, j)

    def transformation(self) -> Transformation:
        moved = self.coords(1, 3)
        return Transformation.of({i: self.rng.randrange(self.window) for i in moved})

    def gamma(self, cofinite: bool = False) -> GammaSpec:
        coords = self.coords(1, 2)
        return GammaSpec.cofinite(coords) if cofinite else GammaSpec.finite(coords)

    def boolean_term(self, leaves: Sequence[Term], depth: int) -> Term:
        """Random Boolean combination of ``leaves`` of at most ``depth`` levels."""

        if depth <= 0 or self.rng.random() < 0.25:
            leaf = self.rng.choice(list(leaves))
            return Not(leaf) if self.rng.random() < 0.3 else leaf
        roll = self.rng.random()
        if roll < 0.2:
            return Not(self.boolean_term(leaves, depth - 1))
        left = self.boolean_term(leaves, depth - 1)
        right = self.boolean_term(leaves, depth - 1)
        return Join(left, right) if roll < 0.6 else Meet(left, right)

    def hyper_term(self) -> Hyper:
        tail = self.rng.choice([Fraction(0), Fraction(1), self.rational()])
        explicit = tuple((i, self.rational()) for i in self.coords(0, 2))
        return Hyper(self.rational(), explicit, tail)

    def term(self, depth: int, names: Sequence[str] = ()) -> Term:
        """Random term over the whole expression language."""

        if depth <= 0 or self.rng.random() < 0.2:
            leaf_kinds = ["unit", "pof", "diag", "hyper"] + (["var"] if names else [])
            kind = self.rng.choice(leaf_kinds)
            if kind == "unit":
                return Unit(self.rng.random() < 0.5)
            if kind == "pof":
                return Pof(self.rational())
            if kind == "diag":
                i, j = self.transposition()
                return Diag(i, j)
            if kind == "var":
                return Var(self.rng.choice(list(names)))
            return self.hyper_term()

        kind = self.rng.choice(["not", "join", "meet", "cyl", "swap", "subst"])
        if kind == "not":
            return Not(self.term(depth - 1, names))
        if kind == "join":
            return Join(self.term(depth - 1, names), self.term(depth - 1, names))
        if kind == "meet":
            return Meet(self.term(depth - 1, names), self.term(depth - 1, names))
        if kind == "cyl":
            return Cyl(self.gamma(self.rng.random() < 0.3), self.term(depth - 1, names))
        if kind == "swap":
            i, j = self.transposition()
            return Swap(i, j, self.term(depth - 1, names))
        t = self.transformation()
        if not t.moved:
            t = Transformation.transposition(*self.transposition())
        return Subst(t, self.term(depth - 1, names))
