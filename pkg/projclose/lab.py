from __future__ import annotations

import asyncio
import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from typing import TYPE_CHECKING, Self

from loguru import logger

from . import closure, density, subplane
from .exceptions import InvalidInput
from .models import ClosureCaps
from .utils import write_atomic

if TYPE_CHECKING:
    import pathlib
    from collections.abc import Sequence
    from concurrent.futures import Executor
    from fractions import Fraction

    from .models import (
        AxiomReport,
        BasisSpec,
        Classification,
        ClosureTrace,
        DegenerateShape,
        DensityReport,
        HPoint,
        Report,
    )
    from .store import PointStore

__all__ = ("ProjectiveLab", "default_threads", "points_csv")


def default_threads() -> int:
    """
    ``PROJCLOSE_THREADS`` if set, else the machine's CPU count.

    Raises
    ------
    InvalidInput
        If ``PROJCLOSE_THREADS`` is not a positive integer.
    """
    env = os.environ.get("PROJCLOSE_THREADS")
    if not env:
        return os.cpu_count() or 1

    msg = f"PROJCLOSE_THREADS must be a positive integer, got {env!r}"
    try:
        threads = int(env)
    except ValueError as e:
        raise InvalidInput(msg) from e
    if threads < 1:
        raise InvalidInput(msg)
    return threads


class ProjectiveLab:
    """
    Runs closure experiments, owning the worker pool and the report files.

    Parameters:
        threads: Number of workers the pair enumeration is split into. Defaults to 1.
        caps: Level and point caps for every closure. Defaults to ClosureCaps().
        samples: Sphere sample size for density measurements. Defaults to 10000.
        sample_budget: Pairs sampled per axiom when verifying. Defaults to 10000.
        seed: Seed for axiom sampling. Defaults to 0.
        executor: An executor to use instead of creating a process pool. Defaults to None.
    """

    def __init__(
        self,
        *,
        threads: int = 1,
        caps: ClosureCaps | None = None,
        samples: int = 10_000,
        sample_budget: int = 10_000,
        seed: int = 0,
        executor: Executor | None = None,
    ) -> None:
        self.threads = threads
        self.caps = caps or ClosureCaps()
        self.samples = samples
        self.sample_budget = sample_budget
        self.seed = seed

        self._executor = executor
        self._owns_executor = False
        self._started = False

    async def __aenter__(self) -> Self:
        await self.start()
        return self

    async def __aexit__(self, exc_type, exc, tb) -> None:  # noqa: ANN001
        await self.close()

    def _require_started(self) -> None:
        if not self._started:
            msg = f"Call `{self.__class__.__name__}.start` before running experiments."
            raise RuntimeError(msg)

    async def start(self) -> None:
        """
        Starts the worker pool.
        """
        if self._executor is None and self.threads > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.threads)
            self._owns_executor = True
            logger.debug(f"Started a process pool with {self.threads} workers")
        self._started = True

    async def close(self) -> None:
        """
        Shuts the worker pool down if this lab created it.
        """
        if self._owns_executor and self._executor is not None:
            await asyncio.to_thread(self._executor.shutdown)
            self._executor = None
            self._owns_executor = False
        self._started = False

    async def run_closure(self, basis: BasisSpec) -> tuple[PointStore, ClosureTrace]:
        """
        Generate the closure of a basis level by level.

        Parameters
        ----------
        basis : BasisSpec
            The three generating vectors.

        Returns
        -------
        tuple[PointStore, ClosureTrace]
            The generated points and the per-level record.

        Raises
        ------
        InvalidBasis
            If the vectors are not a basis.
        """
        self._require_started()
        return await asyncio.to_thread(
            closure.run_closure,
            basis,
            self.caps,
            executor=self._executor,
            workers=self.threads,
        )

    async def classify(self, basis: BasisSpec) -> Classification:
        """
        Classify a basis as degenerate (tripod or five points) or dense.

        Raises
        ------
        InvalidBasis
            If the vectors are not a basis.
        """
        return subplane.classify_basis(basis)

    async def density(
        self, basis: BasisSpec
    ) -> tuple[PointStore, ClosureTrace, DensityReport]:
        """
        Run the closure and measure covering radius and separation after each level.

        Returns
        -------
        tuple[PointStore, ClosureTrace, DensityReport]
            The generated points, the per-level record and the density measurements.
        """
        store, trace = await self.run_closure(basis)
        sample = density.sample_directions(self.samples)
        report = await asyncio.to_thread(density.density_report, store, trace, sample)
        return store, trace, report

    async def verify(
        self, basis: BasisSpec
    ) -> tuple[PointStore, ClosureTrace, AxiomReport, DegenerateShape | None]:
        """
        Run the closure and check (P1)-(P3) and ortho-closure on it.

        Returns
        -------
        tuple[PointStore, ClosureTrace, AxiomReport, DegenerateShape | None]
            The shape is only described for stores that stabilized.
        """
        store, trace = await self.run_closure(basis)
        axioms = await asyncio.to_thread(
            subplane.verify_axioms, store, self.sample_budget, self.seed
        )
        shape = subplane.detect_degenerate_shape(store) if store.stabilized else None
        return store, trace, axioms, shape

    async def moebius(
        self, quadrangle: Sequence[HPoint | Sequence[int | Fraction]], rounds: int
    ) -> PointStore:
        """
        Build the Möbius net of a quadrangle.

        Raises
        ------
        NotAQuadrangle
            If three of the points are collinear.
        PointCapExceeded
            If the net outgrows ``caps.max_points``.
        """
        return await asyncio.to_thread(subplane.moebius_net, quadrangle, rounds, self.caps)

    async def save_report(self, report: Report, path: pathlib.Path) -> None:
        await write_atomic(path, report.to_json())

    async def save_points(self, store: PointStore, path: pathlib.Path) -> None:
        """Write ``level,x1,x2,x3`` rows, coordinates as decimal integer strings."""
        await write_atomic(path, points_csv(store))


def points_csv(store: PointStore) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("level", "x1", "x2", "x3"))
    for point, level in store.entries():
        writer.writerow((level, *(str(c) for c in point.coords)))
    return buffer.getvalue()
