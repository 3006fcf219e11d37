from __future__ import annotations
import logging
from datetime import datetime
from pathlib import Path
from collections.abc import Sequence
from app.application.suites import SuiteResult
from app.infrastructure.build_excel import build_excel


logger = logging.getLogger(__name__)

OUTPUT_DIR = Path(__file__).resolve().parents[2] / "output"


def default_report_path(results: Sequence[SuiteResult], now: datetime | None = None) -> Path:
    """``output/suites_<name>_<timestamp>.xlsx``; several suites are named ``all``."""

    label = results[0].name if len(results) == 1 else "all"
    stamp = (now or datetime.now()).strftime("%Y-%m-%dT%H-%M-%S")
    return OUTPUT_DIR / f"suites_{label}_{stamp}.xlsx"

def save_excel(results: Sequence[SuiteResult], output_path: str | Path | None = None) -> Path:
    """Write the suite workbook and return its resolved path; ExcelReportError and OSError propagate."""

    target = Path(output_path) if output_path is not None else default_report_path(results)
    payload = build_excel(results)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(payload)
    logger.info("Suite workbook written to %s (%d bytes)", target.resolve(), len(payload))
    return target.resolve()
