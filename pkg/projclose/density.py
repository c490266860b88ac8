"""How well a point set fills the projective plane, measured in the elliptic metric."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from loguru import logger
from scipy.spatial import cKDTree

from .closure import run_closure
from .exceptions import TooFewPoints
from .models import DensityLevel, DensityReport, SphereSample
from .projective import to_directions
from .store import PointStore

if TYPE_CHECKING:
    from concurrent.futures import Executor

    from .models import BasisSpec, ClosureCaps, ClosureTrace

__all__ = (
    "covering_radius",
    "density_curve",
    "density_report",
    "min_separation",
    "sample_directions",
)

GOLDEN_RATIO = (1 + np.sqrt(5)) / 2
CHUNK_SIZE = 1024


def sample_directions(n: int) -> SphereSample:
    """
    Fibonacci lattice of ``n`` directions on the upper hemisphere.

    Heights ``z`` are spread evenly over ``(0, 1)`` and never reach the equator, so
    every projective direction is represented at most once.
    """
    if n < 1:
        msg = f"sample size must be positive, got {n}"
        raise ValueError(msg)

    i = np.arange(n, dtype=np.float64)
    z = 1 - (i + 0.5) / n
    r = np.sqrt(1 - z * z)
    theta = 2 * np.pi * i / GOLDEN_RATIO
    vectors = np.column_stack((r * np.cos(theta), r * np.sin(theta), z))
    return SphereSample(n=n, vectors=vectors)


def _as_array(points: PointStore | np.ndarray) -> np.ndarray:
    if isinstance(points, PointStore):
        return to_directions(points.points())
    arr = np.asarray(points, dtype=np.float64)
    return arr / np.linalg.norm(arr, axis=1, keepdims=True)


def _angles(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise elliptic distance, via ``atan2`` so tiny angles keep their precision."""
    sines = np.linalg.norm(np.cross(a, b), axis=1)
    cosines = np.abs(np.einsum("ij,ij->i", a, b))
    return np.arctan2(sines, cosines)


def covering_radius(
    store: PointStore | np.ndarray, sample: SphereSample, *, accelerated: bool = False
) -> float:
    """
    Largest distance from a sample direction to its nearest stored point, in radians.

    Parameters
    ----------
    store : PointStore | np.ndarray
        The points, or an ``(m, 3)`` array of directions.
    sample : SphereSample
        The directions the radius is evaluated at.
    accelerated : bool, optional
        Find nearest points with a k-d tree over both unit vectors of every point
        instead of the brute force dot product reduction.
    """
    pts = _as_array(store)
    if not len(pts):
        msg = "covering radius of an empty point set"
        raise ValueError(msg)
    directions = sample.vectors

    if accelerated:
        tree = cKDTree(np.vstack((pts, -pts)))
        chords, _ = tree.query(directions, k=1)
        radii = 2 * np.arcsin(np.minimum(chords / 2, 1.0))
        return float(np.clip(radii.max(), 0.0, np.pi / 2))

    worst = 0.0
    for lo in range(0, len(directions), CHUNK_SIZE):
        chunk = directions[lo : lo + CHUNK_SIZE]
        nearest = np.abs(chunk @ pts.T).argmax(axis=1)
        worst = max(worst, float(_angles(chunk, pts[nearest]).max()))
    return worst


def min_separation(store: PointStore | np.ndarray) -> float:
    """
    Smallest elliptic distance between two distinct stored points, in radians.

    Raises
    ------
    TooFewPoints
        If fewer than two points are given.
    """
    pts = _as_array(store)
    if len(pts) < 2:
        raise TooFewPoints(2, len(pts))

    best = np.pi / 2
    for lo in range(0, len(pts), CHUNK_SIZE):
        chunk = pts[lo : lo + CHUNK_SIZE]
        cosines = np.abs(chunk @ pts.T)
        rows = np.arange(len(chunk))
        cosines[rows, rows + lo] = -1.0
        nearest = cosines.argmax(axis=1)
        best = min(best, float(_angles(chunk, pts[nearest]).min()))
    return best


def density_report(
    store: PointStore, trace: ClosureTrace, sample: SphereSample, *, accelerated: bool = False
) -> DensityReport:
    """Covering radius and separation of the closure after each level of ``trace``."""
    levels: list[DensityLevel] = []
    for record in trace.levels:
        sub = store.prefix(record.level)
        radius = covering_radius(sub, sample, accelerated=accelerated)
        separation = min_separation(sub) if len(sub) >= 2 else None
        logger.debug(
            f"Level {record.level}: {len(sub)} points, covering radius {radius:.6f}, "
            f"min separation {separation}"
        )
        levels.append(
            DensityLevel(
                level=record.level,
                points=len(sub),
                covering_radius=radius,
                min_separation=separation,
            )
        )
    return DensityReport(samples=sample.n, levels=levels)


def density_curve(
    basis: BasisSpec,
    caps: ClosureCaps | None = None,
    n: int = 10_000,
    *,
    executor: Executor | None = None,
    workers: int = 1,
) -> DensityReport:
    """
    Run the closure of ``basis`` and measure its density after every level.

    Raises
    ------
    InvalidBasis
        Propagated from :func:`run_closure`.
    """
    store, trace = run_closure(basis, caps, executor=executor, workers=workers)
    return density_report(store, trace, sample_directions(n))
