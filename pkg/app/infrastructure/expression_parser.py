from __future__ import annotations
import logging
from fractions import Fraction
from collections.abc import Iterable
from app.domain.constraints import Point
from app.domain.terms import (
    Cyl,
    Diag,
    Hyper,
    Join,
    Meet,
    Not,
    ONE_TERM,
    Pof,
    Subst,
    Swap,
    Term,
    Var,
    ZERO_TERM,
)
from app.domain.transformations import GammaSpec, Transformation
from app.shared.errors import ExpressionSyntaxError
from app.shared.rationals import parse_rational


logger = logging.getLogger(__name__)

_JOIN_OPS = ("+", "|")
_MEET_OPS = ("*", "&")
_ATOM_START = ("a(", "d(", "H(", "c{", "C{", "s[", "s{", "0", "1", "ident", "(", "~")


class _Parser:
    """Recursive descent over the expression language.

        Positions are kept in characters; errors report UTF-8 byte offsets.
        """

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    # lexical helpers

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _found(self) -> str:
        ch = self._peek()
        return ch if ch else "end of input"

    def _byte_offset(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    def _fail(self, expected: Iterable[str]) -> ExpressionSyntaxError:
        self._skip_ws()
        return ExpressionSyntaxError(self._byte_offset(self.pos), expected, self._found())

    def _accept(self, token: str) -> bool:
        self._skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def _expect(self, token: str) -> None:
        if not self._accept(token):
            raise self._fail([token])

    def _nat(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self._fail(["nat"])
        return int(self.text[start: self.pos])

    def _rational(self) -> Fraction:
        self._skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "/"):
            self.pos += 1
        raw = self.text[start: self.pos]
        try:
            return parse_rational(raw)
        except ValueError:
            self.pos = start
            raise self._fail(["rational"]) from None

    def _ident(self) -> str | None:
        self._skip_ws()
        start = self.pos
        if self.pos < len(self.text) and (self.text[self.pos].isalpha() or self.text[self.pos] == "_"):
            self.pos += 1
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            return self.text[start: self.pos]
        return None

    def finish(self) -> None:
        if self._peek():
            raise self._fail(["+", "|", "*", "&", "end of input"])

    # grammar

    def expr(self) -> Term:
        term = self.term()
        while self._peek() in _JOIN_OPS:
            self.pos += 1
            term = Join(term, self.term())
        return term

    def term(self) -> Term:
        factor = self.factor()
        while self._peek() in _MEET_OPS:
            self.pos += 1
            factor = Meet(factor, self.factor())
        return factor

    def factor(self) -> Term:
        if self._accept("~"):
            return Not(self.factor())
        return self.atom()

    def _nats(self, close: str) -> list[int]:
        coords: list[int] = []
        if self._accept(close):
            return coords
        coords.append(self._nat())
        while self._accept(","):
            coords.append(self._nat())
        self._expect(close)
        return coords

    def _parenthesized(self) -> Term:
        self._expect("(")
        inner = self.expr()
        self._expect(")")
        return inner

    def _hyper(self) -> Hyper:
        rhs = self._rational()
        self._expect(";")
        explicit: list[tuple[int, Fraction]] = []
        while self._peek() not in ("|", ""):
            i = self._nat()
            self._expect(":")
            explicit.append((i, self._rational()))
            self._accept(",")
        self._expect("|")
        tail = self._rational()
        self._expect(")")
        return Hyper(rhs, tuple(explicit), tail)

    def _mapping(self) -> Transformation:
        mapping: dict[int, int] = {}
        if self._accept("}"):
            return Transformation.identity()
        while True:
            src = self._nat()
            self._expect("->")
            mapping[src] = self._nat()
            if not self._accept(","):
                break
        self._expect("}")
        return Transformation.of(mapping)

    def atom(self) -> Term:
        head = self._peek()
        if head == "(":
            return self._parenthesized()
        if head == "@":
            self.pos += 1
            name = self._ident()
            if name is None:
                raise self._fail(["ident"])
            return Var(name)
        if head.isdigit():
            start = self.pos
            value = self._nat()
            if value in (0, 1):
                return ONE_TERM if value == 1 else ZERO_TERM
            self.pos = start
            raise self._fail(_ATOM_START)

        start = self.pos
        name = self._ident()
        if name is None:
            raise self._fail(_ATOM_START)

        nxt = self.text[self.pos] if self.pos < len(self.text) else ""
        if name == "a" and nxt == "(":
            self.pos += 1
            rhs = self._rational()
            self._expect(")")
            return Pof(rhs)
        if name == "d" and nxt == "(":
            self.pos += 1
            i = self._nat()
            self._expect(",")
            j = self._nat()
            self._expect(")")
            return Diag(i, j)
        if name == "H" and nxt == "(":
            self.pos += 1
            return self._hyper()
        if name in ("c", "C") and nxt == "{":
            self.pos += 1
            coords = self._nats("}")
            gamma = GammaSpec.finite(coords) if name == "c" else GammaSpec.cofinite(coords)
            return Cyl(gamma, self._parenthesized())
        if name == "s" and nxt == "[":
            self.pos += 1
            i = self._nat()
            self._expect(",")
            j = self._nat()
            self._expect("]")
            return Swap(i, j, self._parenthesized())
        if name == "s" and nxt == "{":
            self.pos += 1
            t = self._mapping()
            return Subst(t, self._parenthesized())

        logger.debug("Identifier %r at offset %d", name, start)
        return Var(name)

    def point(self) -> Point:
        values: dict[int, Fraction] = {}
        self._expect("{")
        if self._accept("}"):
            return Point.of(values)
        while True:
            self._skip_ws()
            offset = self.pos
            i = self._nat()
            if i in values:
                raise ExpressionSyntaxError(self._byte_offset(offset), ["new coordinate"], str(i))
            self._expect(":")
            values[i] = self._rational()
            if not self._accept(","):
                break
        self._expect("}")
        return Point.of(values)


def parse(text: str) -> Term:
    """Parse an expression; syntax errors carry the offset and the expected tokens."""

    parser = _Parser(text)
    term = parser.expr()
    parser.finish()
    return term

def parse_point(text: str) -> Point:
    """Parse ``{i:v, ...}``; absent coordinates are 0."""

    parser = _Parser(text)
    point = parser.point()
    parser.finish()
    return point


class ExpressionParser:
    def parse(self, text: str) -> Term:
        return parse(text)

    def parse_point(self, text: str) -> Point:
        return parse_point(text)
