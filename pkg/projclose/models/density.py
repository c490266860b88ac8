from __future__ import annotations

from typing import Any

import numpy as np
from pydantic import Field, field_validator

from .base import BaseModel
from .geometry import FloatDirection

__all__ = ("DensityLevel", "DensityReport", "SphereSample")


class SphereSample(BaseModel):
    """Deterministic directions on the upper hemisphere, one per projective point."""

    n: int
    vectors: np.ndarray
    """``(n, 3)`` array of unit vectors"""

    @field_validator("vectors", mode="before")
    def _convert_vectors(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            msg = f"expected an (n, 3) array, got shape {arr.shape}"
            raise ValueError(msg)
        arr.setflags(write=False)
        return arr

    @property
    def directions(self) -> list[FloatDirection]:
        return [FloatDirection(vector=(float(x), float(y), float(z))) for x, y, z in self.vectors]


class DensityLevel(BaseModel):
    level: int
    points: int
    covering_radius: float
    """Radians"""
    min_separation: float | None = Field(None)
    """Radians; absent while fewer than two points exist"""


class DensityReport(BaseModel):
    samples: int
    levels: list[DensityLevel]

    @property
    def covering_radii(self) -> list[float]:
        return [lvl.covering_radius for lvl in self.levels]

    @property
    def min_separations(self) -> list[float]:
        return [lvl.min_separation for lvl in self.levels if lvl.min_separation is not None]
