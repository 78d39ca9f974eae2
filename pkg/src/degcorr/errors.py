"""Exception taxonomy shared across the package.

Every error carries a short machine-readable ``kind`` so the CLI can emit
single-line diagnostics that scripts can grep.
"""

from __future__ import annotations


class DegcorrError(Exception):
    """Base class for all degcorr errors."""

    kind = "error"


class InvalidParameterError(DegcorrError):
    kind = "invalid-parameter"


class UnsupportedModeError(DegcorrError):
    kind = "unsupported-mode"


class EmptyInputError(DegcorrError):
    kind = "empty-input"


class IncompatibleInputsError(DegcorrError):
    kind = "incompatible-inputs"


class InvalidStateError(DegcorrError):
    kind = "invalid-state"


class GridParseError(DegcorrError):
    """Malformed grid/manifest file; reports the offending position."""

    kind = "parse-error"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + loc)
        self.line = line
        self.column = column
