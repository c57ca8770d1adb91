"""Exception hierarchy shared by the library and the CLI.

Each class carries the CLI exit code it maps to.
"""

from __future__ import annotations


class KotoricError(Exception):
    exit_code = 1


class InputError(KotoricError, ValueError):
    """Malformed input: bad labels, broken antichain, unparsable file."""

    exit_code = 2


class DomainError(KotoricError, ValueError):
    """An operation was called outside its mathematical domain."""

    exit_code = 2


class ValidationError(KotoricError):
    """Characteristic data fails the non-degeneracy condition."""

    exit_code = 3

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ResourceCapError(KotoricError):
    """A computation would exceed a configured size cap."""

    exit_code = 4

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class DataError(KotoricError):
    """Two independent routes to the same number disagree."""

    exit_code = 5


class OracleMismatch(DataError):
    exit_code = 5


class InternalError(KotoricError, RuntimeError):
    """A mathematical identity that must hold did not; indicates a bug."""

    exit_code = 1
