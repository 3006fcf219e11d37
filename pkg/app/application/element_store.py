from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Generic, TypeVar
from collections.abc import Iterable, Iterator, Sequence
from app.application.qe_engine import cell_sat, equal
from app.domain.constraints import Point
from app.domain.elements import Element


logger = logging.getLogger(__name__)

P = TypeVar("P")


def cell_witnesses(element: Element) -> tuple[Point, ...]:
    """One satisfying point per satisfiable cell."""

    points: dict[Point, None] = {}
    for cell in element.cells:
        point = cell_sat(cell).witness
        if point is not None:
            points.setdefault(point, None)
    return tuple(points)


@dataclass(frozen=True)
class StoredElement(Generic[P]):
    element: Element
    payload: P
    witnesses: tuple[Point, ...] = ()


class ElementStore(Generic[P]):
    """Semantic deduplication of Elements.

        Canonical text is the hash key. Elements with different text land in a
        bucket keyed by their membership pattern over the probe points. Within a
        bucket, a cell witness of either side that the other side misses rejects
        the pair, and equal() decides what is left.
        """

    def __init__(self, probes: Sequence[Point] = ()) -> None:
        self._probes: tuple[Point, ...] = (Point(),) + tuple(p for p in probes if p != Point())
        self._by_text: dict[str, StoredElement[P]] = {}
        self._buckets: dict[tuple[bool, ...], list[StoredElement[P]]] = {}
        self._entries: list[StoredElement[P]] = []
        self.collisions = 0
        self.exact_checks = 0

    @classmethod
    def probing(cls, elements: Iterable[Element]) -> ElementStore[P]:
        """A store whose probe points are cell witnesses of ``elements``."""

        probes: dict[Point, None] = {}
        for element in elements:
            for point in cell_witnesses(element):
                probes.setdefault(point, None)
        return cls(list(probes))

    def _fingerprint(self, element: Element) -> tuple[bool, ...]:
        return tuple(element.holds(p) for p in self._probes)

    def _lookup(self, element: Element, witnesses: tuple[Point, ...] | None) -> StoredElement[P] | None:
        hit = self._by_text.get(element.text)
        if hit is not None:
            return hit
        bucket = self._buckets.get(self._fingerprint(element), [])
        if not bucket:
            return None
        own = witnesses if witnesses is not None else cell_witnesses(element)
        for entry in bucket:
            if not all(entry.element.holds(p) for p in own):
                continue
            if not all(element.holds(p) for p in entry.witnesses):
                continue
            self.exact_checks += 1
            if equal(entry.element, element):
                self.collisions += 1
                logger.debug("Store collision: %s == %s", element.text, entry.element.text)
                return entry
        return None

    def find(self, element: Element) -> StoredElement[P] | None:
        return self._lookup(element, None)

    def add(self, element: Element, payload: P) -> tuple[bool, StoredElement[P]]:
        """Insert unless an equal element is stored; returns (inserted, stored entry)."""

        witnesses = cell_witnesses(element)
        existing = self._lookup(element, witnesses)
        if existing is not None:
            self._by_text.setdefault(element.text, existing)
            return False, existing

        entry = StoredElement(element, payload, witnesses)
        self._by_text[element.text] = entry
        self._buckets.setdefault(self._fingerprint(element), []).append(entry)
        self._entries.append(entry)
        return True, entry

    def __contains__(self, element: Element) -> bool:
        return self.find(element) is not None

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[StoredElement[P]]:
        return iter(self._entries)

    def elements(self) -> list[Element]:
        return [entry.element for entry in self._entries]
