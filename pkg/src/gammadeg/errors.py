"""Exception hierarchy shared by all gammadeg modules."""

from __future__ import annotations


class GammadegError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(GammadegError, ValueError):
    """Vector/form lengths do not agree."""


class CapacityError(GammadegError):
    """Rank exceeds the configured enumeration limit."""


class RegularityViolation(GammadegError):
    """A root value sits exactly on a threshold (0, 1/2) or outside the window."""


class NoValidRepresentative(GammadegError):
    """No lattice translate brings every root value strictly inside (-1, 1)."""


class NoGenericPoint(GammadegError):
    """Every candidate target was rejected; usually inconsistent catalog data."""


class DataError(GammadegError):
    """Catalog entry is internally inconsistent."""


class CatalogParseError(GammadegError):
    """Catalog file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ExpressionSyntaxError(GammadegError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class UnknownSpace(GammadegError, KeyError):
    def __str__(self) -> str:
        return f"unknown space: {self.args[0]}"
