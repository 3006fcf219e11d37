from __future__ import annotations
import json
from dataclasses import dataclass
from app.config import WorkbenchConfig


Record = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Report:
    command: str
    records: tuple[Record, ...]
    # false when a suite check failed or a verification did not hold
    ok: bool = True


def header(config: WorkbenchConfig) -> Record:
    return (
        ("window", str(config.window)),
        ("coeff_height", str(config.coeff_height)),
        ("depth", str(config.depth)),
        ("max_items", str(config.max_items)),
        ("product_width", str(config.product_width)),
        ("sum_width", str(config.sum_width)),
    )

def _quote(value: str) -> str:
    if value == "" or any(ch.isspace() or ch in '="' for ch in value):
        return json.dumps(value)
    return value

def format_record(record: Record) -> str:
    return " ".join(f"{key}={_quote(value)}" for key, value in record)

def format_header(config: WorkbenchConfig) -> str:
    if config.output_format == "records":
        return format_record((("header", "workbench"), *header(config)))
    return "# " + " ".join(f"{key}={value}" for key, value in header(config))

def format_report(report: Report, output_format: str) -> str:
    """Text output aligns ``key  value`` lines; records output is one ``key=value`` line per record."""

    if output_format == "records":
        return "\n".join(format_record((("command", report.command), *record)) for record in report.records)

    blocks: list[str] = []
    for record in report.records:
        if len(record) == 1:
            blocks.append(record[0][1])
        else:
            width = max(len(key) for key, _ in record)
            blocks.append("\n".join(f"{key.ljust(width)}  {value}" for key, value in record))
    return "\n".join(blocks)
