"""Classification of closure bases and checks of the projective plane axioms on stores."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING

from loguru import logger

from .enums import ClassificationKind, ShapeKind
from .exceptions import NotAQuadrangle, NotStabilized, PointCapExceeded, ZeroVector
from .models import AxiomReport, BasisSpec, ClosureCaps, Classification, DegenerateShape, HPoint
from .projective import canonicalize, collinear, incident, join
from .store import PointStore
from .utils import Triple, canonical_triple, cross_coords, det_coords, dot_coords

if TYPE_CHECKING:
    from collections.abc import Sequence

__all__ = (
    "classify_basis",
    "detect_degenerate_shape",
    "find_quadrangle",
    "line_count",
    "moebius_net",
    "quadrangle_of_basis",
    "verify_axioms",
    "verify_ortho_closed",
)

QUADRANGLE_SEARCH_LIMIT = 48
"""Only the first points of a store are searched for a quadrangle"""


def _rational_dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def classify_basis(basis: BasisSpec) -> Classification:
    """
    Decide from exact dot products whether the closure of ``basis`` is degenerate.

    The closure is finite exactly when one basis vector is orthogonal to the other
    two: three points if all three are mutually orthogonal, five otherwise. In every
    other case it is countably infinite and dense.

    Raises
    ------
    InvalidBasis
        If the vectors are not a basis.
    """
    basis.hpoints()
    u, v, w = basis.vectors
    dots = (_rational_dot(u, v), _rational_dot(u, w), _rational_dot(v, w))
    uv, uw, vw = dots

    if uv == uw == vw == 0:
        return Classification(kind=ClassificationKind.DEGENERATE_TRIPOD, witness=0, dots=dots)

    for index, (left, right) in enumerate(((uv, uw), (uv, vw), (uw, vw))):
        if left == 0 and right == 0:
            return Classification(
                kind=ClassificationKind.DEGENERATE_FIVE_POINT, witness=index, dots=dots
            )
    return Classification(kind=ClassificationKind.DENSE_INFINITE, dots=dots)


def quadrangle_of_basis(basis: BasisSpec) -> list[HPoint]:
    """The quadrangle ``{Rb1, Rb2, Rb3, R(b1 + b2 + b3)}`` of a basis."""
    b1, b2, b3 = basis.vectors
    total = tuple(x + y + z for x, y, z in zip(b1, b2, b3, strict=True))
    return [*basis.hpoints(), canonicalize(total)]


def _is_quadrangle(points: Sequence[Triple]) -> bool:
    if len(set(points)) != 4:
        return False
    return all(det_coords(a, b, c) != 0 for a, b, c in combinations(points, 3))


def find_quadrangle(store: PointStore) -> list[HPoint] | None:
    """
    Search the first stored points for four with no three collinear.

    Stores that stabilize are tiny, so for them the search is exhaustive.
    """
    pts = store.coords()[:QUADRANGLE_SEARCH_LIMIT]
    for a, b in combinations(pts, 2):
        for c in pts:
            if c in {a, b} or det_coords(a, b, c) == 0:
                continue
            for d in pts:
                if d in {a, b, c}:
                    continue
                if det_coords(a, b, d) and det_coords(a, c, d) and det_coords(b, c, d):
                    return [HPoint.from_canonical(t) for t in (a, b, c, d)]
    return None


def line_count(store: PointStore) -> int:
    return len(store.lines())


def verify_ortho_closed(store: PointStore) -> tuple[int, int]:
    """
    Check that the polar line of each sufficiently old point carries two stored points.

    Only points tagged at most ``completed_level - 1`` are checked, because the
    points ``a × b`` of a basis vector ``b`` that witness the polar of ``a`` appear
    one level above ``a``.

    Returns
    -------
    tuple[int, int]
        The number of points checked and the number of failures.
    """
    limit = store.completed_level - 1
    if limit < 1:
        return 0, 0

    basis = [t for t in store.coords() if store.level_of(t) == 1]
    coords = store.coords()
    checked = failures = 0
    for a in coords:
        if store.level_of(a) > limit:
            break
        checked += 1
        on_polar: set[Triple] = set()
        for b in basis:
            c = cross_coords(a, b)
            if c != (0, 0, 0) and (t := canonical_triple(c)) in store:
                on_polar.add(t)
        if len(on_polar) >= 2:
            continue
        if sum(1 for q in coords if dot_coords(a, q) == 0) < 2:
            failures += 1
            logger.warning(f"Polar of {a} carries fewer than two stored points")
    return checked, failures


def verify_axioms(store: PointStore, sample_budget: int = 10_000, seed: int = 0) -> AxiomReport:
    """
    Check the incidence axioms on a store by seeded sampling.

    Parameters
    ----------
    store : PointStore
        The point set; its lines are the joins of stored pairs.
    sample_budget : int, optional
        Number of point pairs sampled for (P1) and of line pairs for (P2).
    seed : int, optional
        Seed of the sampling PRNG.

    Returns
    -------
    AxiomReport
        (P2) misses on a store that did not stabilize are counted as open, not as
        failures, since the missing meet may appear at a later level.
    """
    rng = random.Random(seed)
    pts = store.coords()
    n = len(pts)

    p1_checked = p1_failures = 0
    p2_checked = p2_failures = p2_open = 0
    if n >= 2:
        for _ in range(sample_budget):
            i, j = rng.sample(range(n), 2)
            p, q = HPoint.from_canonical(pts[i]), HPoint.from_canonical(pts[j])
            line = join(p, q)
            p1_checked += 1
            if not (incident(p, line) and incident(q, line) and join(q, p) == line):
                p1_failures += 1

        for _ in range(sample_budget):
            i, j = rng.sample(range(n), 2)
            k, m = rng.sample(range(n), 2)
            n1 = canonical_triple(cross_coords(pts[i], pts[j]))
            n2 = canonical_triple(cross_coords(pts[k], pts[m]))
            if n1 == n2:
                continue
            p2_checked += 1
            if canonical_triple(cross_coords(n1, n2)) in store:
                continue
            if store.stabilized:
                p2_failures += 1
            else:
                p2_open += 1

    quadrangle = find_quadrangle(store)
    ortho_checked, ortho_failures = verify_ortho_closed(store)
    return AxiomReport(
        p1_checked=p1_checked,
        p1_failures=p1_failures,
        p2_checked=p2_checked,
        p2_failures=p2_failures,
        p2_open=p2_open,
        p3_found=quadrangle is not None,
        quadrangle=quadrangle,
        ortho_closed_checked=ortho_checked,
        ortho_closed_failures=ortho_failures,
    )


def detect_degenerate_shape(store: PointStore) -> DegenerateShape:
    """
    Describe a stabilized store as collinear points, as points on a line plus an apex
    off it, or as neither.

    When several apexes fit (the orthogonal tripod), the lexicographically smallest
    canonical point is chosen.

    Raises
    ------
    NotStabilized
        If the store was capped before it stopped growing.
    """
    if not store.stabilized:
        raise NotStabilized

    pts = sorted(store.points())
    lines = line_count(store)
    if len(pts) < 3:
        line = join(pts[0], pts[1]) if len(pts) == 2 else None
        return DegenerateShape(kind=ShapeKind.COLLINEAR_SET, line=line, line_count=lines)

    if all(collinear(pts[0], pts[1], r) for r in pts[2:]):
        return DegenerateShape(
            kind=ShapeKind.COLLINEAR_SET, line=join(pts[0], pts[1]), line_count=lines
        )

    for apex in pts:
        rest = [p for p in pts if p != apex]
        line = join(rest[0], rest[1])
        if all(incident(r, line) for r in rest):
            return DegenerateShape(
                kind=ShapeKind.LINE_PLUS_POINT, line=line, apex=apex, line_count=lines
            )
    return DegenerateShape(kind=ShapeKind.NOT_DEGENERATE, line_count=lines)


def moebius_net(
    quadrangle: Sequence[HPoint | Sequence[int | Fraction]],
    levels: int,
    caps: ClosureCaps | None = None,
) -> PointStore:
    """
    Grow a Möbius net: join every pair of points, mark every intersection of the
    resulting lines, and repeat for ``levels`` rounds.

    Points of round ``r`` are tagged ``r + 1``; the quadrangle is level 1.

    Raises
    ------
    NotAQuadrangle
        If the input is not four points with no three collinear.
    PointCapExceeded
        If a round would push the net past ``caps.max_points``.
    """
    caps = caps or ClosureCaps()
    try:
        start = [p.coords if isinstance(p, HPoint) else canonical_triple(p) for p in quadrangle]
    except ZeroVector as e:
        raise NotAQuadrangle from e
    if len(start) != 4 or not _is_quadrangle(start):
        raise NotAQuadrangle

    store = PointStore.from_points((HPoint.from_canonical(t) for t in start), level=1)
    for round_ in range(1, levels + 1):
        pts = store.coords()
        normals = sorted({canonical_triple(cross_coords(a, b)) for a, b in combinations(pts, 2)})
        new: set[Triple] = set()
        for l1, l2 in combinations(normals, 2):
            p = canonical_triple(cross_coords(l1, l2))
            if p in store or p in new:
                continue
            new.add(p)
            if len(store) + len(new) > caps.max_points:
                raise PointCapExceeded(caps.max_points, len(store) + len(new))

        store.extend(sorted(new), round_ + 1)
        store.completed_level = round_ + 1
        logger.debug(
            f"Möbius round {round_}: {len(normals)} lines, {len(new)} new points, {len(store)} total"
        )
        if not new:
            store.stabilized = True
            break
    return store
