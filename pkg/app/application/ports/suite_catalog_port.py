from __future__ import annotations
from typing import Protocol
from app.config import SuiteCatalog


class SuiteCatalogPort(Protocol):
    def load_catalog(self) -> SuiteCatalog:
        ...
