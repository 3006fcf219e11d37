from __future__ import annotations
from typing import Protocol
from app.domain.elements import Element


class ElementCodecPort(Protocol):
    def serialize(self, x: Element) -> str:
        ...

    def deserialize(self, text: str) -> Element:
        ...
