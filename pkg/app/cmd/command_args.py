from __future__ import annotations
import shlex
from collections.abc import Mapping, Sequence
from app.shared.errors import CommandError


_OPEN = "([{"
_CLOSE = ")]}"


def tokenize(line: str) -> list[str]:
    try:
        return shlex.split(line)
    except ValueError as exc:
        raise CommandError(f"cannot split command line: {exc}") from exc

def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split at separators outside any bracket pair; ``a(0),c{0,1}(x)`` gives two parts."""

    parts: list[str] = []
    depth = 0
    start = 0
    for pos, ch in enumerate(text):
        if ch in _OPEN:
            depth += 1
        elif ch in _CLOSE:
            depth -= 1
            if depth < 0:
                raise CommandError(f"unbalanced {ch!r} at offset {pos}")
        elif ch == sep and depth == 0:
            parts.append(text[start:pos].strip())
            start = pos + 1
    if depth != 0:
        raise CommandError("unbalanced brackets")
    parts.append(text[start:].strip())
    if any(not part for part in parts):
        raise CommandError(f"empty item in {text!r}")
    return parts

def take_options(tokens: Sequence[str], known: Mapping[str, bool]) -> tuple[list[str], dict[str, str]]:
    """Separate ``--name [value]`` options from positional tokens.

        ``known`` maps each option to whether it takes a value; anything else
        starting with ``--`` is rejected.
        """

    positional: list[str] = []
    options: dict[str, str] = {}
    it = iter(tokens)
    for token in it:
        if not token.startswith("--"):
            positional.append(token)
            continue
        name = token[2:]
        if name not in known:
            raise CommandError(f"unknown option {token}")
        if known[name]:
            value = next(it, None)
            if value is None:
                raise CommandError(f"option {token} needs a value")
            options[name] = value
        else:
            options[name] = "true"
    return positional, options

def int_arg(raw: str, what: str, minimum: int = 0) -> int:
    try:
        value = int(raw)
    except ValueError as exc:
        raise CommandError(f"{what} must be an integer, got {raw!r}") from exc
    if value < minimum:
        raise CommandError(f"{what} must be >= {minimum}")
    return value
