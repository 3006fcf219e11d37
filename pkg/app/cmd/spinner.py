from __future__ import annotations
import itertools
import sys
import threading
import time
from typing import TextIO


class Spinner:
    """Elapsed-time ticker for long commands; inert unless the stream is a terminal.

        Writes to stderr unless another stream is given.
        """

    _FRAMES = "|/-\\"

    def __init__(self, message: str = "Working", stream: TextIO | None = None, interval: float = 0.1) -> None:
        self.message = message
        self._stream = stream if stream is not None else sys.stderr
        self._interval = interval
        self._done = threading.Event()
        self._worker: threading.Thread | None = None
        self._width = 0

    @property
    def active(self) -> bool:
        return self._worker is not None and self._worker.is_alive()

    def _render(self, frame: str, elapsed: float) -> None:
        line = f"{frame} {self.message} ({elapsed:.0f}s)"
        self._width = max(self._width, len(line))
        self._stream.write("\r" + line.ljust(self._width))
        self._stream.flush()

    def _run(self) -> None:
        started = time.monotonic()
        frames = itertools.cycle(self._FRAMES)
        while not self._done.wait(self._interval):
            self._render(next(frames), time.monotonic() - started)
        self._stream.write("\r" + " " * self._width + "\r")
        self._stream.flush()

    def __enter__(self) -> Spinner:
        if self._stream.isatty():
            self._worker = threading.Thread(target=self._run, name="spinner", daemon=True)
            self._worker.start()
        return self

    def __exit__(self, *exc_info: object) -> None:
        self._done.set()
        if self._worker is not None:
            self._worker.join()
            self._worker = None
