"""
pphx._errors
============
Exception hierarchy.

Two families, matching the CLI exit codes:

    InputError   (exit 2)  malformed or inconsistent input files / grids
    DomainError  (exit 1)  the input is well-formed but the computation
                           cannot proceed or finds nothing

File-system failures are left as the built-in ``OSError`` family.
"""

from __future__ import annotations


class PPHxError(Exception):
    """Base class of every error raised by pphx."""


# ─── Input errors ─────────────────────────────────────────────────────────────

class InputError(PPHxError):
    pass


class ParseError(InputError):
    """A line of an input file could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class GridError(InputError):
    """Grid geometry or point count is inconsistent."""


class FormatError(InputError):
    """Unknown file format tag."""


# ─── Domain errors ────────────────────────────────────────────────────────────

class DomainError(PPHxError):
    pass


class DegenerateAngle(DomainError):
    """Two vectors are zero, parallel or anti-parallel within tolerance."""

    def __init__(self, message: str, where: object = None) -> None:
        self.where = where
        super().__init__(message if where is None else f"{message} at {where}")


class CenterOnGridPoint(DomainError):
    pass


class ScaleError(DomainError):
    pass


class PolygonNotFound(DomainError):
    pass


class SpecMismatch(DomainError):
    pass


class WindingResidualError(DomainError):
    """Summed rotation angles are not close to a multiple of 2π."""
