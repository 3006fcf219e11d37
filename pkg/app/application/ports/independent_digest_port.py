from __future__ import annotations
from typing import Protocol


class IndependentDigestPort(Protocol):
    def digest(self, seed: int, samples: int, window: int, height: int) -> str:
        """Serialization digest of the seeded sample, computed in a separate process."""
        ...
