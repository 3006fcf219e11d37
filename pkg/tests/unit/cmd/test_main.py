from __future__ import annotations
import io
from pathlib import Path
import pytest
from app.cmd import main as main_module
from app.cmd.main import main, run_lines
from app.cmd.session import Session
from app.config import WorkbenchConfig


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ("WORKBENCH_WINDOW", "WORKBENCH_FORMAT", "WORKBENCH_DEPTH", "WORKBENCH_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)

def _session(output_format: str = "text") -> Session:
    return main_module.build_session(WorkbenchConfig(output_format=output_format))

def test_run_lines_prints_reports_and_keeps_going_after_errors() -> None:
    # given
    out = io.StringIO()
    lines = ["# comment", "let x = a(0)", "eq x", 'eq x "a(0)"']

    # when
    status = run_lines(lines, _session("records"), out)

    # then
    printed = out.getvalue().splitlines()
    assert status == 1
    assert printed[0].startswith("header=workbench window=8 ")
    assert printed[1] == 'command=let name=x element="[0 ; | 1]"'
    assert printed[2].startswith("error: usage")
    assert printed[3].startswith("header=workbench ")
    assert printed[4] == "command=eq equal=true"

def test_run_lines_succeeds_when_every_command_succeeds() -> None:
    out = io.StringIO()

    assert run_lines(["serialize d(0,1)", ""], _session(), out) == 0
    assert out.getvalue().splitlines() == [
        "# window=8 coeff_height=8 depth=3 max_items=2000 product_width=3 sum_width=3",
        "[0 ; 0:1 1:-1 | 0]",
    ]

def test_main_runs_a_single_command(capsys: pytest.CaptureFixture[str]) -> None:
    # when
    status = main(["--format", "records", "--window", "5", "eq", "c{0}(a(0))", "1"])

    # then
    captured = capsys.readouterr().out.splitlines()
    assert status == 0
    assert captured[0].startswith("header=workbench window=5 ")
    assert captured[1] == "command=eq equal=true"

def test_main_runs_a_script(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    # given
    script = tmp_path / "session.txt"
    script.write_text("let y = d(0,1)\nmember {0:4,1:4} y\n", encoding="utf-8")

    # when
    status = main(["--script", str(script)])

    # then
    assert status == 0
    assert capsys.readouterr().out.splitlines()[-1] == "true"

def test_main_reports_missing_script(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    status = main(["--script", str(tmp_path / "absent.txt")])

    assert status == 1
    assert "cannot read script" in capsys.readouterr().out

def test_main_rejects_invalid_configuration(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    # given
    monkeypatch.setenv("WORKBENCH_WINDOW", "wide")

    # when
    status = main(["help"])

    # then
    assert status == 2
    assert "WORKBENCH_WINDOW" in capsys.readouterr().err

def test_every_report_starts_with_the_header(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    # given
    script = tmp_path / "session.txt"
    script.write_text("serialize a(0)\nserialize d(0,1)\n", encoding="utf-8")

    # when
    status = main(["--format", "records", "--depth", "2", "--script", str(script)])

    # then
    printed = capsys.readouterr().out.splitlines()
    assert status == 0
    assert len(printed) == 4
    assert printed[0] == printed[2]
    assert printed[0].startswith("header=workbench ") and " depth=2 " in printed[0]
