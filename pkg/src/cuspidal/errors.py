"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input errors exit 2, resource
errors 3, analysis failures 4.
"""

from __future__ import annotations


class CuspidalError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 4


class InputError(CuspidalError, ValueError):
    """Malformed or out-of-range input (unknown vertex, empty set, bad word)."""

    exit_code = 2


class ParameterError(InputError):
    """A parameter violates a documented precondition."""


class ResourceError(CuspidalError):
    """A construction would exceed its configured budget."""

    exit_code = 3

    def __init__(self, message: str, needed: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


class UnsupportedOperationError(CuspidalError):
    """The model family cannot decide the requested question."""

    exit_code = 2


class AnalysisError(CuspidalError):
    """An analysis stage failed after its inputs were accepted."""

    exit_code = 4
