from __future__ import annotations
import argparse
import dataclasses
import logging
import shlex
import sys
from collections.abc import Iterable, Iterator, Sequence
from typing import TextIO
from app.cmd.bootstrap import build_session
from app.cmd.report_format import format_header, format_report
from app.cmd.session import Session, run_command
from app.config import OUTPUT_FORMATS, WorkbenchConfig
from app.infrastructure.config_loader import load_workbench_config
from app.shared.errors import ConfigError, ReportGenerationError, SuiteCatalogLoadError, WorkbenchError


logger = logging.getLogger(__name__)

def logging_conf(level: str = "WARNING") -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        stream=sys.stderr,
    )

def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="workbench",
        description="Exact workbench for polyadic equality set algebras over finite-support rational sequences.",
    )
    parser.add_argument("--window", type=int, help="coordinates 0..N-1 used by closures and searches")
    parser.add_argument("--coeff-height", type=int, help="bound on sampled numerators and denominators")
    parser.add_argument("--depth", type=int, help="default search depth")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, help="text or key=value records")
    parser.add_argument("--script", help="run commands from FILE, one per line")
    parser.add_argument("command", nargs=argparse.REMAINDER, help="a single command to run")
    return parser

def _apply_flags(config: WorkbenchConfig, args: argparse.Namespace) -> WorkbenchConfig:
    overrides: dict[str, object] = {}
    if args.window is not None:
        overrides["window"] = args.window
    if args.coeff_height is not None:
        overrides["coeff_height"] = args.coeff_height
    if args.depth is not None:
        overrides["depth"] = args.depth
    if args.format is not None:
        overrides["output_format"] = args.format
    return dataclasses.replace(config, **overrides)

def _interactive() -> Iterator[str]:
    while True:
        try:
            yield input("workbench> ")
        except EOFError:
            return

def run_lines(lines: Iterable[str], session: Session, out: TextIO) -> int:
    """Run commands in order, each report preceded by the session header.

        Exit status is 1 if any command errored or reported a failure.
        """

    status = 0
    for line in lines:
        try:
            report = run_command(line, session)
        except (WorkbenchError, SuiteCatalogLoadError, ReportGenerationError) as exc:
            print(f"error: {exc}", file=out, flush=True)
            status = 1
            continue
        if report is None:
            continue
        print(format_header(session.config), file=out)
        print(format_report(report, session.config.output_format), file=out, flush=True)
        if not report.ok:
            status = 1
    return status

def main(argv: Sequence[str] | None = None) -> int:
    args = _build_arg_parser().parse_args(argv)

    try:
        config = _apply_flags(load_workbench_config(), args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.window < 1 or config.coeff_height < 1 or config.depth < 0:
        print("error: --window and --coeff-height must be >= 1, --depth >= 0", file=sys.stderr)
        return 2

    logging_conf(config.log_level)
    session = build_session(config)
    out = sys.stdout

    if args.command:
        return run_lines([shlex.join(args.command)], session, out)
    if args.script:
        try:
            with open(args.script, encoding="utf-8") as handle:
                return run_lines(handle.read().splitlines(), session, out)
        except OSError as exc:
            print(f"error: cannot read script {args.script}: {exc}", file=out)
            return 1
    if sys.stdin.isatty():
        return run_lines(_interactive(), session, out)
    return run_lines(sys.stdin.read().splitlines(), session, out)

if __name__ == "__main__":
    sys.exit(main())
