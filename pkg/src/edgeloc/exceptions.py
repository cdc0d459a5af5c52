"""Exception types raised across the package."""

from __future__ import annotations


class GraphFormatError(ValueError):
    """Malformed graph6 / edge-list input.

    ``offset`` is the byte (graph6) or line (edge list) where parsing failed.
    """

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class UnsupportedSizeError(ValueError):
    pass


class InvalidFamilyError(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    pass


class ColoringError(ValueError):
    """A coloring that does not fit the graph or has empty classes."""


class HypothesisError(ValueError):
    """A theorem's hypothesis does not hold for the given input.

    ``failures`` lists each failed check by name.
    """

    def __init__(self, message: str, failures: list[str] | None = None):
        self.failures = list(failures or [])
        super().__init__(message)


class ConstructionError(RuntimeError):
    """A constructor produced a coloring that failed verification."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class BudgetError(RuntimeError):
    """An oracle's size budget was exceeded."""
