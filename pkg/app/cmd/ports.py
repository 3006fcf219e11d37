from __future__ import annotations
from typing import Protocol
from app.domain.constraints import Point
from app.domain.terms import Term


class ExpressionParserPort(Protocol):
    def parse(self, text: str) -> Term:
        ...

    def parse_point(self, text: str) -> Point:
        ...
