from __future__ import annotations
import logging
from fractions import Fraction
from app.domain.constraints import Atom, CoeffSeq, canonicalize_atom
from app.domain.elements import Cell, EMPTY, Element, FULL, Literal
from app.shared.errors import ElementDecodeError
from app.shared.rationals import parse_rational


logger = logging.getLogger(__name__)


class _Reader:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ElementDecodeError(self.pos, f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def token(self, allowed: str) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in allowed:
            self.pos += 1
        return self.text[start: self.pos]

    def rational(self) -> Fraction:
        start = self.pos
        raw = self.token("-0123456789/")
        try:
            return parse_rational(raw)
        except ValueError as exc:
            raise ElementDecodeError(start, f"expected a rational, found {raw!r}") from exc

    def nat(self) -> int:
        start = self.pos
        raw = self.token("0123456789")
        if not raw:
            raise ElementDecodeError(start, "expected a coordinate")
        return int(raw)


def _atom(reader: _Reader) -> Atom:
    reader.expect("[")
    rhs = reader.rational()
    reader.expect(";")
    explicit: dict[int, Fraction] = {}
    while reader.peek() != "|":
        start = reader.pos
        i = reader.nat()
        reader.expect(":")
        if i in explicit:
            raise ElementDecodeError(start, f"coordinate {i} listed twice")
        explicit[i] = reader.rational()
    reader.expect("|")
    tail = reader.rational()
    reader.expect("]")
    return canonicalize_atom(Atom(CoeffSeq.of(explicit, tail), rhs))

def _literal(reader: _Reader) -> Literal:
    positive = True
    if reader.peek() == "~":
        reader.pos += 1
        positive = False
    return Literal(_atom(reader), positive)

def _cell(reader: _Reader) -> Cell:
    literals = [_literal(reader)]
    while reader.peek() == "&":
        reader.pos += 1
        literals.append(_literal(reader))
    return Cell.build(literals)

def serialize(x: Element) -> str:
    """Canonical text of an element: sorted cells and literals, reduced rationals."""

    return x.text

def deserialize(text: str) -> Element:
    reader = _Reader(text)
    head = reader.peek()
    if head in ("0", "1"):
        reader.pos += 1
        if not reader.at_end():
            raise ElementDecodeError(reader.pos, "unexpected text after constant")
        return FULL if head == "1" else EMPTY

    cells = [_cell(reader)]
    while reader.peek() == "|":
        reader.pos += 1
        cells.append(_cell(reader))
    if not reader.at_end():
        raise ElementDecodeError(reader.pos, f"unexpected {reader.peek()!r}")
    return Element.of(cells)


class ElementCodec:
    def serialize(self, x: Element) -> str:
        return serialize(x)

    def deserialize(self, text: str) -> Element:
        return deserialize(text)
