from __future__ import annotations

from typing import Any

from pydantic import Field

from ..enums import CapHit
from .analysis import AxiomReport, Classification, DegenerateShape
from .base import BaseModel
from .closure import LevelRecord
from .density import DensityLevel

__all__ = ("MoebiusRound", "Report")


class MoebiusRound(BaseModel):
    round: int
    points: int
    """Cumulative number of points after the round"""
    new_points: int


class Report(BaseModel):
    """The JSON document written by every command. Absent sections are omitted."""

    config: dict[str, Any]
    classification: Classification | None = Field(None)
    trace: list[LevelRecord] | None = Field(None)
    density: list[DensityLevel] | None = Field(None)
    axioms: AxiomReport | None = Field(None)
    shape: DegenerateShape | None = Field(None)
    moebius: list[MoebiusRound] | None = Field(None)
    points: int | None = Field(None)
    stabilized: bool | None = Field(None)
    cap_hit: CapHit | None = Field(None)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True) + "\n"
