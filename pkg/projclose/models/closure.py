from __future__ import annotations

from pydantic import Field, PositiveInt, model_validator

from ..enums import CapHit, PairStrategy
from ..exceptions import InvalidBasis, ZeroVector
from ..utils import canonical_triple, det_coords
from .base import BaseModel
from .geometry import HPoint, RationalTriple

__all__ = ("BasisSpec", "ClosureCaps", "ClosureTrace", "LevelRecord")


class BasisSpec(BaseModel):
    """Three rational vectors ``u, v, w`` before canonicalization."""

    u: RationalTriple
    v: RationalTriple
    w: RationalTriple

    @classmethod
    def from_triples(cls, triples: list[tuple[object, object, object]]) -> BasisSpec:
        if len(triples) != 3:
            msg = f"a basis has three vectors, got {len(triples)}"
            raise InvalidBasis(msg)
        u, v, w = triples
        return cls(u=u, v=v, w=w)

    @property
    def vectors(self) -> tuple[RationalTriple, RationalTriple, RationalTriple]:
        return (self.u, self.v, self.w)

    def hpoints(self) -> tuple[HPoint, HPoint, HPoint]:
        """
        Canonicalize the three vectors.

        Raises
        ------
        InvalidBasis
            If a vector is zero, two vectors span the same ray or the three are collinear.
        """
        try:
            coords = [canonical_triple(vec) for vec in self.vectors]
        except ZeroVector as e:
            msg = "a basis vector is zero"
            raise InvalidBasis(msg) from e

        if len(set(coords)) < 3:
            msg = "fewer than three distinct projective points"
            raise InvalidBasis(msg)
        if det_coords(*coords) == 0:
            msg = "the three points are collinear"
            raise InvalidBasis(msg)
        a, b, c = (HPoint.from_canonical(t) for t in coords)
        return (a, b, c)


class ClosureCaps(BaseModel):
    max_level: PositiveInt = 6
    """Highest level that is generated, the basis is level 1"""
    max_points: PositiveInt = 100_000
    strategy: PairStrategy = PairStrategy.FRONTIER


class LevelRecord(BaseModel):
    level: int
    points: int
    """Cumulative number of projective points after this level"""
    new_points: int
    ms: float | None = Field(None)
    """Wall time of the level in milliseconds, omitted from deterministic reports"""


class ClosureTrace(BaseModel):
    levels: list[LevelRecord]
    stabilized: bool
    cap_hit: CapHit = CapHit.NONE

    @model_validator(mode="after")
    def _check_consistent(self) -> ClosureTrace:
        if self.stabilized and self.levels and self.levels[-1].new_points != 0:
            msg = "a stabilized trace must end with a level without new points"
            raise ValueError(msg)
        return self

    @property
    def final_level(self) -> int:
        return self.levels[-1].level if self.levels else 0

    def without_timings(self) -> ClosureTrace:
        return self.model_copy(
            update={"levels": [r.model_copy(update={"ms": None}) for r in self.levels]}
        )
