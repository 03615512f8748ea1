"""Exception hierarchy shared across the package.

Refusals (a computation declines its input for a principled reason) are
kept separate from format errors and from numerical failures so the CLI
can map them onto distinct exit codes.
"""
from __future__ import annotations


class WordEntropyError(Exception):
    """Base class for all package-specific errors."""


class WordFormatError(WordEntropyError):
    """Input text is not a valid word file or word literal."""


class Refusal(WordEntropyError):
    """The input is well-formed but the requested analysis does not apply."""

    #: machine-readable tag used in structured output
    reason = "refused"


class NotPreSturmianError(Refusal):
    """Complexity exceeds n+1 below the requested order, so no block
    certificate of that order can exist."""

    reason = "not-pre-sturmian"


class ParseMismatchError(Refusal):
    """Greedy block parsing hit a letter that fits neither block."""

    reason = "parse-mismatch"

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position  # 1-based letter index of the mismatch


class InsufficientDataError(Refusal):
    """The prefix is too short to finish the requested analysis.

    ``partial`` carries whatever partial certificate existed when the
    data ran out, as a plain dict, or None.
    """

    reason = "insufficient-data"

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = partial


class NumericalFailureError(WordEntropyError):
    """A root finder or estimate failed to reach its tolerance."""


class InternalInvariantError(WordEntropyError):
    """A self-check that should be unconditionally true failed."""
