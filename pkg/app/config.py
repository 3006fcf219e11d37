from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any


OUTPUT_FORMATS = ("text", "records")

# session / engine options
@dataclass(frozen=True)
class WorkbenchConfig:
    window: int = 8
    coeff_height: int = 8
    depth: int = 3
    max_items: int = 2000
    product_width: int = 3
    sum_width: int = 3
    output_format: str = "text"
    log_level: str = "WARNING"

    @property
    def window_coords(self) -> tuple[int, ...]:
        return tuple(range(self.window))

# acceptance suites
@dataclass(frozen=True)
class SuiteSettings:
    name: str
    description: str
    samples: int
    seed: int
    budget_seconds: float
    params: dict[str, Any] = field(default_factory=dict)

@dataclass(frozen=True)
class SuiteCatalog:
    suites: list[SuiteSettings]

    def get(self, name: str) -> SuiteSettings | None:
        for suite in self.suites:
            if suite.name == name:
                return suite
        return None
