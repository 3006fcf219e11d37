from __future__ import annotations
import logging
from io import BytesIO
from collections.abc import Iterable, Sequence
from openpyxl import Workbook
from openpyxl.styles import Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter
from openpyxl.worksheet.worksheet import Worksheet
from app.application.suites import SuiteResult


logger = logging.getLogger(__name__)

class ExcelReportError(RuntimeError):
    """Raised when the Excel report cannot be generated."""

CHECK_HEADERS = ("suite", "check", "passed", "total", "status", "finding")
SUMMARY_HEADERS = ("suite", "result", "checks", "failed", "samples", "elapsed_seconds")

_BOLD = Font(bold=True)
_THIN = Side(border_style="thin", color="000000")
_BOX = Border(left=_THIN, right=_THIN, top=_THIN, bottom=_THIN)
_OK_FILL = PatternFill(fill_type="solid", fgColor="C6EFCE")
_FAIL_FILL = PatternFill(fill_type="solid", fgColor="FFC7CE")

Row = Sequence[str | int | float]


def build_excel(results: Iterable[SuiteResult]) -> bytes:
    """Workbook with one row per check ("Suite Results") and one per suite ("Summary")."""

    suites = list(results)
    checks = sorted((c for r in suites for c in r.checks), key=lambda c: (c.suite, c.check))

    wb = Workbook()
    first = wb.active
    if not isinstance(first, Worksheet):
        logger.error("Workbook has no active worksheet: %r", first)
        raise ExcelReportError("Failed to get active worksheet")

    first.title = "Suite Results"
    _fill_sheet(
        first,
        CHECK_HEADERS,
        [
            (c.suite, c.check, c.passed, c.total, "ok" if c.ok else "FAIL", c.finding)
            for c in checks
        ],
        status_column=CHECK_HEADERS.index("status"),
    )
    _fill_sheet(
        wb.create_sheet("Summary"),
        SUMMARY_HEADERS,
        [
            (r.name, "pass" if r.passed else "fail", len(r.checks), len(r.findings), r.samples,
             round(r.elapsed_seconds, 2))
            for r in sorted(suites, key=lambda r: r.name)
        ],
        status_column=SUMMARY_HEADERS.index("result"),
    )

    buffer = BytesIO()
    try:
        wb.save(buffer)
    except Exception as exc:
        logger.exception("Failed to serialize suite workbook")
        raise ExcelReportError("Failed to build Excel report") from exc
    logger.debug("Suite workbook: %d check rows, %d suites", len(checks), len(suites))
    return buffer.getvalue()

def _fill_sheet(ws: Worksheet, headers: Sequence[str], rows: Iterable[Row], status_column: int) -> None:
    ws.append(list(headers))
    for row in rows:
        ws.append(list(row))

    for index, cells in enumerate(ws.iter_rows(), start=1):
        for cell in cells:
            cell.border = _BOX
        if index == 1:
            for cell in cells:
                cell.font = _BOLD
            continue
        status = cells[status_column]
        status.fill = _OK_FILL if status.value in ("ok", "pass") else _FAIL_FILL
    ws.freeze_panes = "A2"
    _fit_widths(ws)

def _fit_widths(ws: Worksheet, padding: int = 2, narrowest: int = 8, widest: int = 80) -> None:
    for position, column in enumerate(ws.iter_cols(), start=1):
        longest = max((len(str(cell.value)) for cell in column if cell.value is not None), default=0)
        ws.column_dimensions[get_column_letter(position)].width = min(max(longest + padding, narrowest), widest)
