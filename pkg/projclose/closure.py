"""Level-by-level cross-product closure of a basis, deduplicated projectively."""

from __future__ import annotations

import time
from itertools import combinations, repeat
from typing import TYPE_CHECKING

from loguru import logger

from .enums import CapHit, PairStrategy
from .exceptions import PointCapExceeded
from .models import BasisSpec, ClosureCaps, ClosureTrace, HPoint, LevelRecord
from .store import PointStore
from .utils import Triple, canonical_triple, cross_coords

if TYPE_CHECKING:
    from collections.abc import Sequence
    from concurrent.futures import Executor

__all__ = ("is_stabilized", "next_level", "run_closure", "witness")


def _level_candidates(
    points: Sequence[Triple], start: int, stripe: int, stride: int, budget: int
) -> tuple[list[Triple], bool]:
    """
    Canonical cross products of the pairs ``(i, j)``, ``i < j``, ``j >= start`` with
    ``j ≡ start + stripe (mod stride)`` that are not stored yet.

    Returns the candidates and whether more than ``budget`` of them were found, in
    which case enumeration stops early.
    """
    known = set(points)
    found: set[Triple] = set()
    for j in range(start + stripe, len(points), stride):
        s = points[j]
        for i in range(j):
            c = cross_coords(points[i], s)
            if c[0] == 0 and c[1] == 0 and c[2] == 0:
                continue
            c = canonical_triple(c)
            if c in known or c in found:
                continue
            found.add(c)
            if len(found) > budget:
                return [], True
    return list(found), False


def next_level(
    store: PointStore,
    caps: ClosureCaps | None = None,
    *,
    executor: Executor | None = None,
    workers: int = 1,
) -> PointStore:
    """
    Insert the canonical cross product of every pair of distinct stored points.

    The new points are tagged ``store.completed_level + 1`` and inserted in
    lexicographic order, so the result does not depend on how the pairs were split
    between workers. With :attr:`PairStrategy.FRONTIER` only pairs involving a point
    of the last completed level are enumerated; older pairs were handled before.

    Parameters
    ----------
    store : PointStore
        A non-empty store, enlarged in place.
    caps : ClosureCaps, optional
        Point cap and pair strategy. Defaults to ``ClosureCaps()``.
    executor : Executor, optional
        Pool used when ``workers > 1``.
    workers : int, optional
        Number of stripes the pair enumeration is split into.

    Returns
    -------
    PointStore
        The same store, with one more completed level.

    Raises
    ------
    PointCapExceeded
        If the level would push the store past ``caps.max_points``. Nothing is inserted.
    """
    caps = caps or ClosureCaps()
    if not len(store):
        msg = "cannot extend an empty store"
        raise ValueError(msg)

    points = store.coords()
    start = 0 if caps.strategy is PairStrategy.ALL_PAIRS else store.frontier_start()
    budget = caps.max_points - len(points)

    if executor is not None and workers > 1:
        results = list(
            executor.map(
                _level_candidates,
                repeat(points),
                repeat(start),
                range(workers),
                repeat(workers),
                repeat(budget),
            )
        )
    else:
        results = [_level_candidates(points, start, 0, 1, budget)]

    merged: set[Triple] = set()
    for found, overflow in results:
        if overflow:
            raise PointCapExceeded(caps.max_points, len(points) + budget + 1)
        merged.update(found)
    if len(merged) > budget:
        raise PointCapExceeded(caps.max_points, len(points) + len(merged))

    level = store.completed_level + 1
    store.extend(sorted(merged), level)
    store.completed_level = level
    return store


def run_closure(
    basis: BasisSpec,
    caps: ClosureCaps | None = None,
    *,
    executor: Executor | None = None,
    workers: int = 1,
) -> tuple[PointStore, ClosureTrace]:
    """
    Iterate :func:`next_level` from the basis until the point set stops growing or a
    cap is reached.

    Raises
    ------
    InvalidBasis
        If the basis vectors are zero, repeated or collinear.
    PointCapExceeded
        If ``caps.max_points`` cannot even hold the basis.
    """
    caps = caps or ClosureCaps()
    basis_points = basis.hpoints()
    if caps.max_points < len(basis_points):
        raise PointCapExceeded(caps.max_points, len(basis_points))

    started = time.perf_counter()
    store = PointStore.from_points(basis_points, level=1)
    records = [
        LevelRecord(
            level=1,
            points=len(store),
            new_points=len(store),
            ms=round((time.perf_counter() - started) * 1000, 3),
        )
    ]

    stabilized = False
    cap_hit = CapHit.NONE
    for level in range(2, caps.max_level + 1):
        started = time.perf_counter()
        before = len(store)
        try:
            next_level(store, caps, executor=executor, workers=workers)
        except PointCapExceeded as e:
            cap_hit = CapHit.POINT_CAP
            logger.warning(f"Level {level} discarded: {e}")
            break

        elapsed = round((time.perf_counter() - started) * 1000, 3)
        new = len(store) - before
        records.append(LevelRecord(level=level, points=len(store), new_points=new, ms=elapsed))
        logger.debug(f"Level {level}: {new} new points, {len(store)} total, {elapsed} ms")
        if new == 0:
            stabilized = True
            break
    else:
        cap_hit = CapHit.LEVEL_CAP
        logger.warning(f"Level cap {caps.max_level} reached while the closure was still growing")

    store.stabilized = stabilized
    store.cap_hit = cap_hit
    return store, ClosureTrace(levels=records, stabilized=stabilized, cap_hit=cap_hit)


def is_stabilized(trace: ClosureTrace) -> bool:
    """True iff the last level added nothing and no cap cut the run short."""
    if not trace.levels:
        msg = "empty trace"
        raise ValueError(msg)
    return trace.levels[-1].new_points == 0 and trace.cap_hit is CapHit.NONE


def witness(store: PointStore, point: HPoint) -> tuple[HPoint, HPoint] | None:
    """
    Find a stored pair of strictly lower level whose cross product is ``point``.

    Returns None for basis points, and for points that were not produced by the
    closure recursion.
    """
    level = store.level_of(point)
    older = [t for t in store.coords() if store.level_of(t) < level]
    for r, s in combinations(older, 2):
        c = cross_coords(r, s)
        if c != (0, 0, 0) and canonical_triple(c) == point.coords:
            return HPoint.from_canonical(r), HPoint.from_canonical(s)
    return None
