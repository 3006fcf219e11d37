from __future__ import annotations
from pathlib import Path
from typing import TYPE_CHECKING, Protocol, Sequence

if TYPE_CHECKING:
    from app.application.suites import SuiteResult


class ReportExporterPort(Protocol):
    def export(self, results: Sequence[SuiteResult], output_path: str | Path | None = None) -> Path:
        """Persist suite results and return the report path."""
        ...
