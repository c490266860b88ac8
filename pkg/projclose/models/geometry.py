from __future__ import annotations

import math
from fractions import Fraction
from typing import Annotated, Any, Self

from pydantic import BeforeValidator, PlainSerializer, field_validator, model_validator

from ..exceptions import ZeroVector
from ..utils import Triple, canonical_triple
from .base import BaseModel

__all__ = (
    "BigInt",
    "ExactScalar",
    "FloatDirection",
    "HLine",
    "HPoint",
    "QuadrupleProduct",
    "Rational",
    "RationalTriple",
)

ExactScalar = Fraction
"""Arbitrary precision rational; numerator and denominator are always coprime."""


def _to_fraction(v: Any) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        msg = f"{v!r} is not an exact rational"
        raise ValueError(msg)  # noqa: TRY004
    if isinstance(v, Fraction | int | str):
        return Fraction(v)
    msg = f"cannot interpret {v!r} as a rational"
    raise ValueError(msg)


Rational = Annotated[
    Fraction, BeforeValidator(_to_fraction), PlainSerializer(str, return_type=str)
]
RationalTriple = tuple[Rational, Rational, Rational]
BigInt = Annotated[int, PlainSerializer(str, return_type=str, when_used="json")]
"""Integers of any size, written to JSON as decimal strings."""


class HPoint(BaseModel):
    """A point of the real projective plane stored by its canonical coordinates."""

    coords: tuple[BigInt, BigInt, BigInt]

    @field_validator("coords", mode="before")
    def _canonicalize(cls, v: Any) -> Triple:
        return canonical_triple(tuple(v))

    @classmethod
    def from_canonical(cls, coords: Triple) -> Self:
        """Wrap coordinates that are already canonical without validating them."""
        return cls.model_construct(coords=coords)

    @property
    def x1(self) -> int:
        return self.coords[0]

    @property
    def x2(self) -> int:
        return self.coords[1]

    @property
    def x3(self) -> int:
        return self.coords[2]

    def __lt__(self, other: HPoint) -> bool:
        return self.coords < other.coords

    def __repr__(self) -> str:
        return f"HPoint{self.coords}"


class HLine(BaseModel):
    """A line ``a^⊥`` stored by the canonical point ``Ra`` of its normal."""

    normal: HPoint

    @field_validator("normal", mode="before")
    def _convert_normal(cls, v: Any) -> HPoint:
        return v if isinstance(v, HPoint) else HPoint(coords=v)

    @classmethod
    def from_canonical(cls, coords: Triple) -> Self:
        return cls.model_construct(normal=HPoint.from_canonical(coords))

    def __repr__(self) -> str:
        return f"HLine{self.normal.coords}"


class FloatDirection(BaseModel):
    """Unit vector in binary64, used for sampling and metric evaluation only."""

    vector: tuple[float, float, float]

    @model_validator(mode="after")
    def _check_unit(self) -> Self:
        norm = math.sqrt(sum(c * c for c in self.vector))
        if abs(norm - 1) > 1e-12:
            msg = f"direction {self.vector} has norm {norm}, expected 1"
            raise ValueError(msg)
        return self

    @classmethod
    def from_vector(cls, v: tuple[float, float, float] | list[float]) -> Self:
        """Normalize ``v`` into a direction."""
        scale = max(abs(c) for c in v)
        if scale == 0:
            raise ZeroVector
        scaled = [c / scale for c in v]
        norm = math.sqrt(sum(c * c for c in scaled))
        x, y, z = (c / norm for c in scaled)
        return cls(vector=(x, y, z))


class QuadrupleProduct(BaseModel):
    """``(p1 × q1) × (p2 × q2)`` together with its two determinant expansions."""

    value: tuple[BigInt, BigInt, BigInt]
    """Computed directly as a cross product of cross products"""
    second_pair_expansion: tuple[BigInt, BigInt, BigInt]
    """det(p1, q1, q2) p2 - det(p1, q1, p2) q2"""
    first_pair_expansion: tuple[BigInt, BigInt, BigInt]
    """det(p1, p2, q2) q1 - det(q1, p2, q2) p1"""

    @property
    def consistent(self) -> bool:
        return self.value == self.second_pair_expansion == self.first_pair_expansion
