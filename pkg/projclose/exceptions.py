from __future__ import annotations

__all__ = (
    "EqualLines",
    "EqualPoints",
    "InvalidBasis",
    "InvalidInput",
    "NotAQuadrangle",
    "NotStabilized",
    "PointCapExceeded",
    "ProjcloseError",
    "TooFewPoints",
    "ZeroVector",
)


class ProjcloseError(Exception):
    """Base error. ``code`` doubles as the command line exit code."""

    code: int = 2

    def __init__(self, message: str | None = None) -> None:
        self.message = message

    def __str__(self) -> str:
        return self.message or "An error occurred while computing the closure"


class InvalidInput(ProjcloseError):
    def __str__(self) -> str:
        return f"Invalid input: {self.message}"


class ZeroVector(ProjcloseError):
    def __str__(self) -> str:
        return "The zero vector does not represent a projective point"


class EqualPoints(ProjcloseError):
    def __str__(self) -> str:
        return "Cannot join a point with itself"


class EqualLines(ProjcloseError):
    def __str__(self) -> str:
        return "Cannot meet a line with itself"


class InvalidBasis(ProjcloseError):
    def __str__(self) -> str:
        return f"Invalid basis: {self.message or 'the three points must be distinct and non-collinear'}"


class NotAQuadrangle(ProjcloseError):
    def __str__(self) -> str:
        return "Four points with no three collinear are required"


class TooFewPoints(ProjcloseError):
    def __init__(self, required: int, actual: int) -> None:
        self.required = required
        self.actual = actual

    def __str__(self) -> str:
        return f"At least {self.required} points are required, got {self.actual}"


class PointCapExceeded(ProjcloseError):
    code = 3

    def __init__(self, limit: int, attempted: int) -> None:
        self.limit = limit
        self.attempted = attempted

    def __str__(self) -> str:
        return f"Point cap of {self.limit} exceeded (at least {self.attempted} points)"


class NotStabilized(ProjcloseError):
    code = 3

    def __str__(self) -> str:
        return "The point store did not stabilize within its caps"
