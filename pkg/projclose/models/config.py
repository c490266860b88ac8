from __future__ import annotations

import pathlib
from typing import Any

from pydantic import Field, NonNegativeInt, PositiveInt, model_validator

from ..enums import Command, OutputFormat
from .base import BaseModel
from .closure import BasisSpec, ClosureCaps
from .geometry import RationalTriple

__all__ = ("DEFAULT_ROUNDS", "STANDARD_QUADRANGLE", "RunConfig")

STANDARD_QUADRANGLE: list[tuple[int, int, int]] = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
DEFAULT_ROUNDS = 3

_PROVENANCE_EXCLUDE = {"threads", "timings", "verbosity"}


class RunConfig(BaseModel):
    command: Command
    basis: list[RationalTriple] | None = Field(None, min_length=3, max_length=3)
    quadrangle: list[RationalTriple] | None = Field(None, min_length=4, max_length=4)
    caps: ClosureCaps = Field(default_factory=ClosureCaps)
    rounds: NonNegativeInt | None = Field(None)
    """Join/meet rounds of ``moebius``, 0 returns the quadrangle itself"""
    samples: PositiveInt = 10_000
    sample_budget: PositiveInt = 10_000
    seed: int = 0
    threads: PositiveInt = 1
    output: pathlib.Path = pathlib.Path("projclose-report")
    format: OutputFormat = OutputFormat.JSON
    approx_floats: bool = False
    timings: bool = False
    verbosity: int = 0

    @model_validator(mode="after")
    def _check_inputs(self) -> RunConfig:
        if self.command is Command.MOEBIUS:
            if self.basis is not None:
                msg = "moebius takes --quadrangle, not --basis"
                raise ValueError(msg)
        elif self.rounds is not None:
            msg = f"{self.command} takes no rounds"
            raise ValueError(msg)
        elif self.basis is None:
            msg = f"{self.command} requires --basis"
            raise ValueError(msg)
        elif self.quadrangle is not None:
            msg = f"{self.command} takes --basis, not --quadrangle"
            raise ValueError(msg)
        return self

    @property
    def basis_spec(self) -> BasisSpec:
        if self.basis is None:
            msg = f"{self.command} has no basis"
            raise ValueError(msg)
        return BasisSpec.from_triples(self.basis)

    @property
    def moebius_rounds(self) -> int:
        return self.rounds if self.rounds is not None else DEFAULT_ROUNDS

    @property
    def quadrangle_or_default(self) -> list[RationalTriple] | list[tuple[int, int, int]]:
        return self.quadrangle if self.quadrangle is not None else STANDARD_QUADRANGLE

    @property
    def json_path(self) -> pathlib.Path:
        return self.output.with_name(f"{self.output.name}.json")

    @property
    def csv_path(self) -> pathlib.Path:
        return self.output.with_name(f"{self.output.name}.csv")

    def provenance(self) -> dict[str, Any]:
        """The resolved config as embedded in reports; execution-only settings are left out."""
        return self.model_dump(mode="json", exclude=_PROVENANCE_EXCLUDE, exclude_none=True)
