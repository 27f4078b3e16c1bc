"""Exception hierarchy shared by every module."""

from __future__ import annotations


class BraidError(ValueError):
    """Base class for domain errors (bad input, violated hypotheses)."""


class BraidSyntaxError(BraidError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class StrandMismatchError(BraidError):
    pass


class SplitClosureError(BraidError):
    """A construction that needs a non-split closure got a braid with an unused strand."""


class BudgetExhausted(RuntimeError):
    """A bounded search ran out of budget before reaching a verdict.

    ``best`` carries whatever partial result the search had when it stopped.
    """

    def __init__(self, message: str, best=None, diagnostics: dict | None = None):
        super().__init__(message)
        self.best = best
        self.diagnostics = diagnostics or {}
