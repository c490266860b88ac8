from __future__ import annotations

import math
import re
import uuid
from fractions import Fraction
from typing import TYPE_CHECKING

import aiofiles
import aiofiles.os
from loguru import logger

from .exceptions import InvalidInput, ZeroVector

if TYPE_CHECKING:
    import pathlib
    from collections.abc import Sequence

Triple = tuple[int, int, int]

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_FLOAT = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def canonical_triple(v: Sequence[int | Fraction]) -> Triple:
    """
    Return the coprime integer representative of the ray through ``v``.

    Denominators are cleared, the gcd is divided out and the sign is flipped so
    that the first nonzero coordinate is positive.
    """
    if len(v) != 3:
        msg = f"expected 3 coordinates, got {len(v)}"
        raise InvalidInput(msg)

    a, b, c = v
    if not (type(a) is int and type(b) is int and type(c) is int):
        fa, fb, fc = Fraction(a), Fraction(b), Fraction(c)
        scale = math.lcm(fa.denominator, fb.denominator, fc.denominator)
        a = fa.numerator * (scale // fa.denominator)
        b = fb.numerator * (scale // fb.denominator)
        c = fc.numerator * (scale // fc.denominator)

    g = math.gcd(a, b, c)
    if g == 0:
        raise ZeroVector
    if a < 0 or (a == 0 and (b < 0 or (b == 0 and c < 0))):
        g = -g
    return (a // g, b // g, c // g)


def cross_coords(a: Triple, b: Triple) -> Triple:
    a1, a2, a3 = a
    b1, b2, b3 = b
    return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)


def dot_coords(a: Triple, b: Triple) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def det_coords(a: Triple, b: Triple, c: Triple) -> int:
    return dot_coords(a, cross_coords(b, c))


def approximate_float(value: float, tolerance: float = 1e-12) -> Fraction:
    """Return the first continued-fraction convergent within ``tolerance`` of ``value``."""
    if not math.isfinite(value):
        msg = f"{value!r} is not a finite number"
        raise InvalidInput(msg)

    target = Fraction(value)
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    remainder = target
    while True:
        a = math.floor(remainder)
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        convergent = Fraction(h, k)
        frac = remainder - a
        if abs(convergent - target) <= tolerance or frac == 0:
            return convergent
        remainder = 1 / frac


def parse_rational(text: str, *, approx_floats: bool = False) -> Fraction:
    """Parse ``"p/q"`` or an integer; decimal floats only when ``approx_floats`` is set."""
    text = text.strip()
    if _RATIONAL.match(text):
        try:
            return Fraction(text)
        except ZeroDivisionError as e:
            msg = f"zero denominator in {text!r}"
            raise InvalidInput(msg) from e
    if _FLOAT.match(text):
        if not approx_floats:
            msg = f"{text!r} is a float, pass --approx-floats to approximate it by a rational"
            raise InvalidInput(msg)
        approx = approximate_float(float(text))
        logger.warning(f"Approximating {text} by {approx}")
        return approx
    msg = f"cannot parse {text!r} as a rational number"
    raise InvalidInput(msg)


def parse_triples(
    text: str, *, count: int, approx_floats: bool = False
) -> list[tuple[Fraction, Fraction, Fraction]]:
    """
    Parse ``"x1,x2,x3;y1,y2,y3;..."`` into exactly ``count`` rational triples.

    Raises
    ------
    InvalidInput
        If the number of vectors or coordinates is wrong or an entry does not parse.
    """
    vectors = [chunk for chunk in text.split(";") if chunk.strip()]
    if len(vectors) != count:
        msg = f"expected {count} vectors separated by ';', got {len(vectors)}"
        raise InvalidInput(msg)

    triples: list[tuple[Fraction, Fraction, Fraction]] = []
    for vector in vectors:
        entries = vector.split(",")
        if len(entries) != 3:
            msg = f"expected 3 coordinates in {vector.strip()!r}, got {len(entries)}"
            raise InvalidInput(msg)
        x, y, z = (parse_rational(e, approx_floats=approx_floats) for e in entries)
        triples.append((x, y, z))
    return triples


async def write_atomic(path: pathlib.Path, content: str) -> None:
    """Write ``content`` next to ``path`` and rename it into place."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.{uuid.uuid4().hex}.tmp")
    try:
        async with aiofiles.open(tmp, "w", encoding="utf-8", newline="") as f:
            await f.write(content)
        await aiofiles.os.replace(tmp, path)
    except BaseException:
        if await aiofiles.os.path.exists(tmp):
            await aiofiles.os.remove(tmp)
        raise
    logger.debug(f"Wrote {path}")
