from __future__ import annotations
from collections.abc import Iterable


class WorkbenchError(RuntimeError):
    """Base class for errors reported to the workbench user."""

class PreconditionError(WorkbenchError):
    """Raised when an operation is called outside its precondition."""

class FusionPreconditionError(PreconditionError):
    """Raised when a fusion coordinate is not fresh for one of the fused elements."""

    def __init__(self, coordinate: int, reason: str) -> None:
        super().__init__(f"coordinate {coordinate} {reason}")
        self.coordinate = coordinate

class InsufficientFreshCoordinatesError(PreconditionError):
    """Raised when a dilation does not provide enough fresh coordinate pairs."""

    def __init__(self, required: int, available: int) -> None:
        super().__init__(
            f"fusion needs {required} fresh coordinate pair(s), dilation provides {available}"
        )
        self.required = required
        self.available = available

class EngineInvariantError(WorkbenchError):
    """Raised when the decision engine produces a result that fails re-evaluation."""

class ExpressionSyntaxError(WorkbenchError):
    """Raised when an expression cannot be parsed."""

    def __init__(self, offset: int, expected: Iterable[str], found: str) -> None:
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        super().__init__(
            f"syntax error at offset {offset}: expected one of {', '.join(self.expected)}; "
            f"found {found!r}"
        )

class UnboundIdentifierError(WorkbenchError):
    """Raised when an expression references a name with no binding."""

class ElementDecodeError(WorkbenchError):
    """Raised when canonical element text cannot be decoded."""

    def __init__(self, position: int, message: str) -> None:
        super().__init__(f"decode error at position {position}: {message}")
        self.position = position

class CommandError(WorkbenchError):
    """Raised when a CLI command has malformed arguments."""

class ConfigError(RuntimeError):
    """Raised when workbench configuration is missing or invalid."""

class SuiteCatalogLoadError(RuntimeError):
    """Raised when the acceptance suite catalog cannot be loaded (read/parse/shape/mapping)."""

class ReportGenerationError(RuntimeError):
    """Raised when report export/generation fails."""
