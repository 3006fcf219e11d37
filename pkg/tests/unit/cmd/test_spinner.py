from __future__ import annotations
import io
import time
from app.cmd.spinner import Spinner


class FakeTerminal(io.StringIO):
    def isatty(self) -> bool:
        return True

def test_spinner_is_silent_without_a_terminal() -> None:
    # given
    stream = io.StringIO()

    # when
    with Spinner("Searching", stream=stream, interval=0.01) as spinner:
        time.sleep(0.03)
        assert not spinner.active

    # then
    assert stream.getvalue() == ""

def test_spinner_ticks_and_clears_its_line() -> None:
    # given
    stream = FakeTerminal()

    # when
    with Spinner("Searching", stream=stream, interval=0.01) as spinner:
        time.sleep(0.1)
        assert spinner.active

    # then
    output = stream.getvalue()
    assert "Searching (0s)" in output
    assert output.endswith("\r")
    assert not spinner.active
