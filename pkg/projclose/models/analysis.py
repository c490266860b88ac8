from __future__ import annotations

from pydantic import Field

from ..enums import ClassificationKind, ShapeKind
from .base import BaseModel
from .geometry import HLine, HPoint, Rational

__all__ = ("AxiomReport", "Classification", "DegenerateShape")


class Classification(BaseModel):
    kind: ClassificationKind
    witness: int | None = Field(None)
    """Index (0 = u, 1 = v, 2 = w) of the basis vector orthogonal to the other two"""
    dots: tuple[Rational, Rational, Rational]
    """Exact dot products u·v, u·w, v·w"""

    @property
    def is_degenerate(self) -> bool:
        return self.kind.is_degenerate


class AxiomReport(BaseModel):
    p1_checked: int
    p1_failures: int
    p2_checked: int
    p2_failures: int
    p2_open: int
    """Meets that fall outside a store that was capped before it stabilized"""
    p3_found: bool
    quadrangle: list[HPoint] | None = Field(None)
    ortho_closed_checked: int
    ortho_closed_failures: int

    @property
    def ok(self) -> bool:
        return self.p1_failures == 0 and self.p2_failures == 0 and self.ortho_closed_failures == 0


class DegenerateShape(BaseModel):
    kind: ShapeKind
    line: HLine | None = Field(None)
    apex: HPoint | None = Field(None)
    line_count: int
    """Number of distinct lines joining stored points"""
