"""Exception hierarchy shared by every module.

The CLI maps these onto its exit codes, so the classes are kept distinct:
a wrong solution is reported as ``False`` by a verifier, never raised.
"""

from __future__ import annotations


class FairSetsError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(FairSetsError, ValueError):
    """Bad arguments: out-of-range vertices, length mismatches, malformed solutions."""


class DomainError(FairSetsError, ValueError):
    """An operation was applied outside its mathematical domain (e.g. A(0))."""


class InstanceError(FairSetsError, ValueError):
    """An instance violates a problem-specific invariant (parity, odd parts)."""


class OracleViolation(FairSetsError):
    """An oracle broke its contract: value out of range or not antipodal."""

    def __init__(self, message: str, query: object = None) -> None:
        super().__init__(message)
        self.query = query


class InternalConsistencyError(FairSetsError, RuntimeError):
    """A back-map met a case that valid inputs can never produce."""


class BoundExceeded(FairSetsError):
    """A brute-force solver refused an instance larger than its configured bound."""
