from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from collections.abc import Mapping
from app.shared.rationals import format_rational


Rational = Fraction
RationalLike = Fraction | int

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_rational(value: RationalLike) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)

def _check_coordinate(i: int) -> int:
    if i < 0:
        raise ValueError(f"coordinates are naturals, got {i}")
    return int(i)


@dataclass(frozen=True)
class Point:
    """A member of V: finite-support rational sequence, absent coordinates are 0."""

    entries: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def of(cls, values: Mapping[int, RationalLike] | None = None) -> Point:
        items = sorted(
            (_check_coordinate(i), _as_rational(v)) for i, v in (values or {}).items()
        )
        return cls(tuple((i, v) for i, v in items if v != 0))

    @cached_property
    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)

    def value(self, i: int) -> Fraction:
        return self.as_dict.get(i, ZERO)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.entries)

    def render(self) -> str:
        return "{" + ", ".join(f"{i}:{format_rational(v)}" for i, v in self.entries) + "}"


@dataclass(frozen=True)
class CoeffSeq:
    """Eventually-constant coefficient sequence: explicit finite part plus tail value.

        Explicit entries never equal the tail; ``at(i)`` falls back to the tail.
        """

    explicit: tuple[tuple[int, Fraction], ...] = ()
    tail: Fraction = ZERO

    @classmethod
    def of(
        cls,
        explicit: Mapping[int, RationalLike] | None = None,
        tail: RationalLike = 0,
    ) -> CoeffSeq:
        t = _as_rational(tail)
        items = sorted(
            (_check_coordinate(i), _as_rational(c)) for i, c in (explicit or {}).items()
        )
        return cls(tuple((i, c) for i, c in items if c != t), t)

    @cached_property
    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.explicit)

    def at(self, i: int) -> Fraction:
        return self.as_dict.get(i, self.tail)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.explicit)

    def is_zero(self) -> bool:
        return not self.explicit and self.tail == 0

    def leading(self) -> Fraction:
        # explicit coordinates in order, tail considered after all of them
        for _, c in self.explicit:
            if c != 0:
                return c
        return self.tail

    def scaled(self, factor: Fraction) -> CoeffSeq:
        return CoeffSeq.of({i: c * factor for i, c in self.explicit}, self.tail * factor)

    def minus(self, other: CoeffSeq, factor: Fraction) -> CoeffSeq:
        """Return ``self - factor * other`` coordinate-wise, tail included."""

        keys = set(self.as_dict) | set(other.as_dict)
        return CoeffSeq.of(
            {i: self.at(i) - factor * other.at(i) for i in keys},
            self.tail - factor * other.tail,
        )

    def render(self) -> str:
        return "".join(f"{i}:{format_rational(c)} " for i, c in self.explicit)


class AtomKind(Enum):
    FULL = "full"
    EMPTY = "empty"
    PROPER = "proper"


@dataclass(frozen=True)
class Atom:
    """The hyperplane [rhs, coeffs] = {s in V : sum_i coeffs_i * s_i = rhs}."""

    coeffs: CoeffSeq
    rhs: Fraction

    @property
    def kind(self) -> AtomKind:
        if self.coeffs.is_zero():
            return AtomKind.FULL if self.rhs == 0 else AtomKind.EMPTY
        return AtomKind.PROPER

    @property
    def support(self) -> frozenset[int]:
        return self.coeffs.support

    @cached_property
    def text(self) -> str:
        return f"[{format_rational(self.rhs)} ; {self.coeffs.render()}| {format_rational(self.coeffs.tail)}]"

    def evaluate(self, point: Point) -> bool:
        # finite sum: the point has finite support
        total = sum((self.coeffs.at(i) * v for i, v in point.entries), ZERO)
        return total == self.rhs

    def __str__(self) -> str:
        return self.text


FULL_ATOM = Atom(CoeffSeq(), ZERO)
EMPTY_ATOM = Atom(CoeffSeq(), ONE)


def canonicalize_atom(atom: Atom) -> Atom:
    """Scale so the leading coefficient is 1 and prune explicit entries equal to the tail.

        Two proper atoms denote the same subset of V iff their canonical forms are identical.
        """

    coeffs = CoeffSeq.of(atom.coeffs.as_dict, atom.coeffs.tail)
    if coeffs.is_zero():
        return FULL_ATOM if atom.rhs == 0 else EMPTY_ATOM

    lead = coeffs.leading()
    if lead == 1:
        return Atom(coeffs, _as_rational(atom.rhs))
    return Atom(coeffs.scaled(1 / lead), atom.rhs / lead)

def mk_hyperplane(rhs: RationalLike, coeffs: CoeffSeq) -> Atom:
    return canonicalize_atom(Atom(coeffs, _as_rational(rhs)))

def mk_diagonal(i: int, j: int) -> Atom:
    if i == j:
        return FULL_ATOM
    return canonicalize_atom(Atom(CoeffSeq.of({i: 1, j: -1}, 0), ZERO))

def atom_eval(atom: Atom, point: Point) -> bool:
    return atom.evaluate(point)
