from __future__ import annotations

from itertools import combinations
from typing import TYPE_CHECKING

from .enums import CapHit
from .models import HLine, HPoint
from .utils import Triple, canonical_triple, cross_coords

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

__all__ = ("PointStore",)


class PointStore:
    """
    Deduplicated, insertion-ordered set of projective points tagged with the level
    at which each first appeared.

    Points are keyed by canonical coordinates, so membership is a dict lookup.
    ``completed_level`` counts the levels that have been fully generated, including a
    final level that added nothing.
    """

    def __init__(self) -> None:
        self._levels: dict[Triple, int] = {}
        self._order: list[Triple] = []
        self.completed_level = 0
        self.stabilized = False
        self.cap_hit = CapHit.NONE

    @classmethod
    def from_points(cls, points: Iterable[HPoint], *, level: int = 1) -> PointStore:
        store = cls()
        for p in points:
            store.add(p.coords, level)
        store.completed_level = level
        return store

    def __len__(self) -> int:
        return len(self._order)

    def __contains__(self, item: HPoint | Triple) -> bool:
        key = item.coords if isinstance(item, HPoint) else item
        return key in self._levels

    def __iter__(self) -> Iterator[HPoint]:
        return (HPoint.from_canonical(t) for t in self._order)

    def __repr__(self) -> str:
        return (
            f"PointStore(points={len(self)}, completed_level={self.completed_level}, "
            f"stabilized={self.stabilized}, cap_hit={self.cap_hit.value!r})"
        )

    @property
    def max_tag(self) -> int:
        return self._levels[self._order[-1]] if self._order else 0

    def add(self, coords: Triple, level: int) -> bool:
        """Insert canonical ``coords``; returns False if the point is already stored."""
        if coords in self._levels:
            return False
        if level < self.max_tag:
            msg = f"level {level} is below the last inserted level {self.max_tag}"
            raise ValueError(msg)
        self._levels[coords] = level
        self._order.append(coords)
        return True

    def extend(self, coords: Iterable[Triple], level: int) -> int:
        return sum(self.add(c, level) for c in coords)

    def coords(self) -> list[Triple]:
        return list(self._order)

    def points(self) -> list[HPoint]:
        return list(self)

    def entries(self) -> Iterator[tuple[HPoint, int]]:
        for t in self._order:
            yield HPoint.from_canonical(t), self._levels[t]

    def level_of(self, item: HPoint | Triple) -> int:
        key = item.coords if isinstance(item, HPoint) else item
        return self._levels[key]

    def frontier_start(self) -> int:
        """Index of the first point tagged with the last completed level."""
        for index, t in enumerate(self._order):
            if self._levels[t] >= self.completed_level:
                return index
        return len(self._order)

    def level_counts(self) -> dict[int, int]:
        """Number of points first seen at each level."""
        counts: dict[int, int] = {}
        for t in self._order:
            level = self._levels[t]
            counts[level] = counts.get(level, 0) + 1
        return counts

    def prefix(self, level: int) -> PointStore:
        """The sub-store of points tagged ``level`` or lower."""
        sub = PointStore()
        for t in self._order:
            tag = self._levels[t]
            if tag > level:
                break
            sub.add(t, tag)
        sub.completed_level = min(level, self.completed_level)
        sub.stabilized = self.stabilized and level >= self.completed_level
        return sub

    def lines(self) -> set[HLine]:
        """All joins of two stored points."""
        normals = {canonical_triple(cross_coords(a, b)) for a, b in combinations(self._order, 2)}
        return {HLine.from_canonical(n) for n in normals}

    def copy(self) -> PointStore:
        dup = PointStore()
        dup._levels = dict(self._levels)
        dup._order = list(self._order)
        dup.completed_level = self.completed_level
        dup.stabilized = self.stabilized
        dup.cap_hit = self.cap_hit
        return dup
