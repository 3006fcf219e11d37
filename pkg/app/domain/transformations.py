from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from collections.abc import Iterable, Mapping
from app.domain.constraints import Point


@dataclass(frozen=True)
class Transformation:
    """Finite transformation of coordinates: identity off ``moved``."""

    moved: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> Transformation:
        for i, j in mapping.items():
            if i < 0 or j < 0:
                raise ValueError(f"coordinates are naturals, got {i}->{j}")
        return cls(tuple(sorted((i, j) for i, j in mapping.items() if i != j)))

    @classmethod
    def transposition(cls, i: int, j: int) -> Transformation:
        return cls.of({i: j, j: i})

    @classmethod
    def identity(cls) -> Transformation:
        return cls(())

    def __call__(self, i: int) -> int:
        for src, dst in self.moved:
            if src == i:
                return dst
        return i

    @property
    def domain(self) -> frozenset[int]:
        """Moved coordinates together with their images."""

        coords: set[int] = set()
        for src, dst in self.moved:
            coords.add(src)
            coords.add(dst)
        return frozenset(coords)

    @property
    def is_transposition(self) -> bool:
        if len(self.moved) != 2:
            return False
        (a, b), (c, d) = self.moved
        return a == d and b == c

    def is_injective_on(self, coords: Iterable[int]) -> bool:
        images = [self(i) for i in coords]
        return len(images) == len(set(images))

    def pull(self, point: Point) -> Point:
        """Return point o tau, i.e. (point o tau)_i = point_{tau(i)}."""

        values = dict(point.entries)
        for src, _ in self.moved:
            values.pop(src, None)
        for src, dst in self.moved:
            values[src] = point.value(dst)
        return Point.of(values)

    def render(self) -> str:
        return ",".join(f"{i}->{j}" for i, j in self.moved)


class GammaKind(Enum):
    FINITE = "finite"
    COFINITE = "cofinite"


@dataclass(frozen=True)
class GammaSpec:
    """Coordinate set of a cylindrification: ``coords`` itself, or everything except ``coords``."""

    kind: GammaKind
    coords: frozenset[int]

    @classmethod
    def finite(cls, coords: Iterable[int]) -> GammaSpec:
        return cls(GammaKind.FINITE, frozenset(coords))

    @classmethod
    def cofinite(cls, retained: Iterable[int]) -> GammaSpec:
        return cls(GammaKind.COFINITE, frozenset(retained))

    def __contains__(self, i: int) -> bool:
        return (i in self.coords) == (self.kind is GammaKind.FINITE)

    def mapped(self, t: Transformation) -> GammaSpec:
        return GammaSpec(self.kind, frozenset(t(i) for i in self.coords))

    def render(self) -> str:
        letter = "c" if self.kind is GammaKind.FINITE else "C"
        return letter + "{" + ",".join(str(i) for i in sorted(self.coords)) + "}"


@dataclass(frozen=True)
class DimSet:
    """Dimension set: ``exceptional`` itself, or its complement when ``tail_member``."""

    exceptional: frozenset[int]
    tail_member: bool

    def __contains__(self, i: int) -> bool:
        return (i in self.exceptional) != self.tail_member

    @property
    def is_finite(self) -> bool:
        return not self.tail_member

    def render(self) -> str:
        listed = "{" + ",".join(str(i) for i in sorted(self.exceptional)) + "}"
        return f"omega - {listed}" if self.tail_member else listed
