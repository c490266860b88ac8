"""Exact points and lines of the real projective plane in homogeneous coordinates."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from .exceptions import EqualLines, EqualPoints
from .models import FloatDirection, HLine, HPoint, QuadrupleProduct
from .utils import Triple, canonical_triple, cross_coords, det_coords, dot_coords

if TYPE_CHECKING:
    from collections.abc import Sequence
    from fractions import Fraction

__all__ = (
    "canonicalize",
    "collinear",
    "cross",
    "det",
    "dot",
    "elliptic_distance",
    "incident",
    "join",
    "meet",
    "polar",
    "pole",
    "quadruple_product",
    "to_direction",
    "to_directions",
)

ZERO: Triple = (0, 0, 0)


def canonicalize(v: Sequence[int | Fraction]) -> HPoint:
    """
    Map a nonzero rational triple to the canonical point of its ray.

    Raises
    ------
    ZeroVector
        If ``v`` is the zero vector.
    """
    return HPoint.from_canonical(canonical_triple(v))


def cross(a: HPoint, b: HPoint) -> Triple:
    """Exact cross product of the canonical coordinates, zero iff ``a == b``."""
    return cross_coords(a.coords, b.coords)


def dot(a: HPoint, b: HPoint) -> int:
    return dot_coords(a.coords, b.coords)


def det(a: HPoint, b: HPoint, c: HPoint) -> int:
    return det_coords(a.coords, b.coords, c.coords)


def join(p: HPoint, q: HPoint) -> HLine:
    """The line ``(p × q)^⊥`` through two distinct points."""
    c = cross(p, q)
    if c == ZERO:
        raise EqualPoints
    return HLine.from_canonical(canonical_triple(c))


def meet(l1: HLine, l2: HLine) -> HPoint:
    """The common point ``R(a × b)`` of two distinct lines ``a^⊥`` and ``b^⊥``."""
    c = cross(l1.normal, l2.normal)
    if c == ZERO:
        raise EqualLines
    return HPoint.from_canonical(canonical_triple(c))


def polar(p: HPoint) -> HLine:
    return HLine.from_canonical(p.coords)


def pole(line: HLine) -> HPoint:
    return line.normal


def incident(p: HPoint, line: HLine) -> bool:
    return dot(p, line.normal) == 0


def collinear(p: HPoint, q: HPoint, r: HPoint) -> bool:
    return det(p, q, r) == 0


def to_direction(p: HPoint) -> np.ndarray:
    """
    Convert exact coordinates to a binary64 unit vector.

    Coordinates are divided by the largest magnitude first, integer true division
    rounds correctly for any size so huge coordinates never overflow.
    """
    scale = max(abs(c) for c in p.coords)
    v = np.array([c / scale for c in p.coords], dtype=np.float64)
    return v / np.linalg.norm(v)


def to_directions(points: Sequence[HPoint]) -> np.ndarray:
    """Stack :func:`to_direction` into an ``(n, 3)`` array."""
    if not points:
        return np.empty((0, 3), dtype=np.float64)
    return np.vstack([to_direction(p) for p in points])


def _exact_angle(p: HPoint, q: HPoint) -> float:
    c = cross(p, q)
    if c == ZERO:
        return 0.0
    d = abs(dot(p, q))
    scale = max(abs(c[0]), abs(c[1]), abs(c[2]), d)
    sine = math.hypot(c[0] / scale, c[1] / scale, c[2] / scale)
    return min(math.atan2(sine, d / scale), math.pi / 2)


def _as_vector(p: HPoint | FloatDirection) -> np.ndarray:
    if isinstance(p, HPoint):
        return to_direction(p)
    return np.asarray(p.vector, dtype=np.float64)


def elliptic_distance(p: HPoint | FloatDirection, q: HPoint | FloatDirection) -> float:
    """
    Elliptic distance ``arccos(|a·b| / (|a| |b|))`` in radians, within ``[0, π/2]``.

    For two exact points the angle is ``atan2(|a × b|, |a·b|)`` of the exact integer
    products, so it is 0 only for the same point and positive for any two distinct
    points however close. Otherwise the cosine is clamped to ``[0, 1]`` before ``arccos``.
    """
    if isinstance(p, HPoint) and isinstance(q, HPoint):
        return _exact_angle(p, q)

    a = _as_vector(p)
    b = _as_vector(q)
    ab = float(np.dot(a, b))
    norms = math.sqrt(float(np.dot(a, a)) * float(np.dot(b, b)))
    cosine = min(max(abs(ab) / norms, 0.0), 1.0)
    return math.acos(cosine)


def quadruple_product(p1: HPoint, q1: HPoint, p2: HPoint, q2: HPoint) -> QuadrupleProduct:
    """
    Compute ``(p1 × q1) × (p2 × q2)`` and both determinant expansions of it.

    The vector lies on both lines ``p1 ∨ q1`` and ``p2 ∨ q2``, which is how the
    meet of two joined lines stays inside a closure.
    """
    value = cross_coords(cross(p1, q1), cross(p2, q2))

    a, b = det(p1, q1, q2), det(p1, q1, p2)
    second_pair = tuple(a * s - b * t for s, t in zip(p2.coords, q2.coords, strict=True))

    c, d = det(p1, p2, q2), det(q1, p2, q2)
    first_pair = tuple(c * s - d * t for s, t in zip(q1.coords, p1.coords, strict=True))

    return QuadrupleProduct(
        value=value, second_pair_expansion=second_pair, first_pair_expansion=first_pair
    )
