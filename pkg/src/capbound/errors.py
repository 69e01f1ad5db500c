"""Exception types that separate failed mathematical checks from misuse.

Plain ValueError (and argparse errors) mean the caller violated a
precondition; CheckFailure subclasses mean an input was well-formed but a
mathematical hypothesis or verification failed, and they carry evidence.
The CLI maps the former to exit code 2 and the latter to exit code 1.
"""

from __future__ import annotations

__all__ = ["CheckFailure", "ProgressionFound", "HypothesisViolation"]


class CheckFailure(Exception):
    """A mathematical check failed; `evidence` is JSON-serializable."""

    def __init__(self, message: str, evidence=None) -> None:
        super().__init__(message)
        self.evidence = evidence


class ProgressionFound(CheckFailure):
    """A set expected to be progression-free contains a + b = 2c.

    Evidence is the violating triple (a, b, c) as coordinate tuples.
    """


class HypothesisViolation(CheckFailure):
    """Data handed to a certificate step does not satisfy its hypothesis."""
