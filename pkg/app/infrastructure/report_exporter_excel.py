from __future__ import annotations
import logging
from pathlib import Path
from collections.abc import Sequence
from app.application.ports.report_exporter_port import ReportExporterPort
from app.application.suites import SuiteResult
from app.infrastructure.build_excel import ExcelReportError
from app.infrastructure.save_excel import save_excel
from app.shared.errors import ReportGenerationError


logger = logging.getLogger(__name__)

class ExcelReportExporter(ReportExporterPort):
    """Suite results as an .xlsx workbook."""

    def export(self, results: Sequence[SuiteResult], output_path: str | Path | None = None) -> Path:
        try:
            return save_excel(results, output_path)
        except (ExcelReportError, OSError) as exc:
            logger.error("Suite workbook export failed: %s", exc)
            raise ReportGenerationError(str(exc)) from exc
