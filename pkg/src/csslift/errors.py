"""Exception types shared across the package."""

from __future__ import annotations


class CssLiftError(Exception):
    """Base class for all package errors."""


class DimensionError(CssLiftError):
    """Operands have incompatible shapes or an index is out of range."""


class IntegerOverflowError(CssLiftError):
    """An exact integer computation would exceed the 64-bit range."""


class OrthogonalityError(CssLiftError):
    """A pair of parity-check matrices fails H_X * H_Z^T = 0 over F2."""

    def __init__(self, x_row: int, z_row: int):
        self.x_row = x_row
        self.z_row = z_row
        super().__init__(
            f"parity-check rows do not commute: X-check {x_row} and Z-check {z_row} "
            "overlap on an odd number of qubits"
        )


class ZLiftError(CssLiftError):
    """An integer lift fails one of its defining conditions."""


class VoltageError(CssLiftError):
    """A voltage assignment is malformed or violates a relator."""


class StructuralError(CssLiftError):
    """A graph-structure precondition is violated (e.g. non-spanning forest)."""


class LiftError(CssLiftError):
    """Lifted boundary maps fail the exact orthogonality they must satisfy."""


class BudgetExceededError(CssLiftError):
    """A bounded search or enumeration exceeded its budget."""

    def __init__(self, message: str, required: int | None = None, partial=None):
        self.required = required
        self.partial = partial
        super().__init__(message)


class ParseError(CssLiftError):
    """A matrix or manifest file is malformed."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        super().__init__(where + message)
