"""Exception types shared across the package."""

from __future__ import annotations


class CfvcError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(CfvcError, ValueError):
    """A text document could not be parsed.

    ``lineno`` is 1-based and ``None`` when the problem is not tied to a
    single line (e.g. a missing header).
    """

    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        self.message = message
        self.lineno = lineno
        self.source = source
        super().__init__(self._render())

    def _render(self) -> str:
        where = self.source or "<input>"
        if self.lineno is not None:
            where = f"{where}:{self.lineno}"
        return f"{where}: {self.message}"

    def with_source(self, source: str) -> "FormatError":
        return FormatError(self.message, self.lineno, source)


class DisconnectedGraphError(CfvcError, ValueError):
    pass


class InvalidCoverError(CfvcError, ValueError):
    pass


class ColoringError(CfvcError, ValueError):
    """Coloring does not fit the graph, or fails a required property."""


class OracleCapError(CfvcError, ValueError):
    """Input exceeds the size cap of a brute-force oracle."""


class ReductionError(CfvcError, ValueError):
    pass


class TriviallyUnsatisfiableError(ReductionError):
    """A clause of size <= 1 makes the formula trivially NAE-unsatisfiable."""
