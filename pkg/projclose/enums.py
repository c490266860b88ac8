from __future__ import annotations

from enum import StrEnum

__all__ = ("CapHit", "ClassificationKind", "Command", "OutputFormat", "PairStrategy", "ShapeKind")


class CapHit(StrEnum):
    NONE = "none"
    LEVEL_CAP = "level_cap"
    """The last allowed level still produced new points"""
    POINT_CAP = "point_cap"
    """A level would have pushed the store past max_points and was discarded"""


class ClassificationKind(StrEnum):
    DEGENERATE_TRIPOD = "degenerate_tripod"
    """Mutually orthogonal basis, the closure is the basis itself"""
    DEGENERATE_FIVE_POINT = "degenerate_five_point"
    """One vector is orthogonal to the other two, the closure has five points"""
    DENSE_INFINITE = "dense_infinite"

    @property
    def is_degenerate(self) -> bool:
        return self is not ClassificationKind.DENSE_INFINITE


class ShapeKind(StrEnum):
    COLLINEAR_SET = "collinear_set"
    LINE_PLUS_POINT = "line_plus_point"
    NOT_DEGENERATE = "not_degenerate"


class PairStrategy(StrEnum):
    FRONTIER = "frontier"
    """Only pairs with at least one point of the newest level"""
    ALL_PAIRS = "all_pairs"


class Command(StrEnum):
    CLOSURE = "closure"
    CLASSIFY = "classify"
    DENSITY = "density"
    VERIFY = "verify"
    MOEBIUS = "moebius"


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
