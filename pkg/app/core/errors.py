"""Error types raised by the core modules.

Each error also derives from the closest builtin so callers may catch
``ValueError`` / ``IndexError`` / ``ZeroDivisionError`` directly.
"""

from __future__ import annotations


class CurveToolError(Exception):
    """Base class of all errors raised by this package."""


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

class FieldMismatch(CurveToolError, ValueError):
    """Operands live in different coefficient fields or rings."""


class DivisionByZero(CurveToolError, ZeroDivisionError):
    """Inversion of the zero scalar."""


class IncompatiblePoint(CurveToolError, ValueError):
    """A specialization point does not belong to the spectrum of the ring."""


class PrecisionMismatch(CurveToolError, ValueError):
    """Truncated series with different precisions were combined."""


class IndexOutOfRange(CurveToolError, IndexError):
    """Branch index or exponent outside the admissible range."""


# ---------------------------------------------------------------------------
# Parameterizations and engine
# ---------------------------------------------------------------------------

class InvalidSubstitution(CurveToolError, ValueError):
    """Target reparameterization by a series that is not of order 1."""


class SingularMatrix(CurveToolError, ValueError):
    """Linear source change by a non-invertible matrix."""


class InvalidParameterization(CurveToolError, ValueError):
    """The parameterization fails validation (condition (*))."""


class MixedShapes(CurveToolError, ValueError):
    """Branch vectors with different field, branch count or precision."""


class MultiBranch(CurveToolError, ValueError):
    """A uni-branch operation was applied to a multi-branch parameterization."""


class MissingCertificate(CurveToolError, ValueError):
    """An operation needing a delta certificate received none."""


class NoGenericRow(CurveToolError, ValueError):
    """A semicontinuity audit was requested on a scan without generic point."""


# ---------------------------------------------------------------------------
# Input documents
# ---------------------------------------------------------------------------

class DocumentSyntaxError(CurveToolError, ValueError):
    """Malformed input document or entry expression.

    Attributes:
        reason: Message without the position suffix.
        line: 1-based line in the document text (None if unknown).
        column: 1-based column in the document text (None if unknown).
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.reason = message
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ConstantTermError(CurveToolError, ValueError):
    """An entry has a nonzero constant term in t."""


class ShapeError(CurveToolError, ValueError):
    """Entry count does not match r × n."""
