from __future__ import annotations
import logging
import subprocess
import sys
from pathlib import Path


logger = logging.getLogger(__name__)

_PROGRAM = (
    "import sys\n"
    "from app.application.suites import serialization_digest\n"
    "from app.infrastructure.element_codec import ElementCodec\n"
    "seed, samples, window, height = (int(v) for v in sys.argv[1:5])\n"
    "print(serialization_digest(ElementCodec(), seed, samples, window, height))\n"
)


class SubprocessDigest:
    """Computes the serialization digest in a fresh interpreter."""

    def __init__(self, timeout_seconds: float = 120.0) -> None:
        self._timeout = timeout_seconds
        self._root = Path(__file__).resolve().parent.parent.parent

    def digest(self, seed: int, samples: int, window: int, height: int) -> str:
        args = [sys.executable, "-c", _PROGRAM, str(seed), str(samples), str(window), str(height)]
        try:
            completed = subprocess.run(
                args,
                cwd=self._root,
                capture_output=True,
                text=True,
                timeout=self._timeout,
                check=True,
            )
        except (subprocess.CalledProcessError, subprocess.TimeoutExpired) as exc:
            logger.error("Digest subprocess failed: %s", exc)
            return f"<subprocess failed: {exc}>"
        return completed.stdout.strip()
