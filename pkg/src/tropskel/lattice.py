"""Integer-lattice helpers: content, primitive vectors, lattice lengths."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Point = tuple[Fraction, ...]
IntVec = tuple[int, ...]


def content(v: Sequence[int]) -> int:
    """gcd of the absolute values of the entries (0 for the zero vector)."""
    g = 0
    for x in v:
        g = math.gcd(g, int(x))
    return g


def primitive(v: Sequence[int]) -> IntVec:
    g = content(v)
    if g == 0:
        raise ValueError("the zero vector has no primitive direction")
    return tuple(int(x) // g for x in v)


def canonical_line_direction(v: Sequence[int]) -> IntVec:
    """Primitive vector with first nonzero entry positive (unoriented comparisons)."""
    p = primitive(v)
    first = next(x for x in p if x != 0)
    return p if first > 0 else tuple(-x for x in p)


def to_point(coords: Sequence) -> Point:
    return tuple(Fraction(c) for c in coords)


def sub_points(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def integer_direction(d: Sequence[Fraction]) -> tuple[IntVec, Fraction]:
    """Write a nonzero rational vector as ``length * primitive``.

    Returns the primitive integer vector and the (positive) lattice length.
    """
    lcm = 1
    for x in d:
        lcm = lcm * Fraction(x).denominator // math.gcd(lcm, Fraction(x).denominator)
    scaled = [int(Fraction(x) * lcm) for x in d]
    g = content(scaled)
    if g == 0:
        raise ValueError("zero vector")
    return tuple(x // g for x in scaled), Fraction(g, lcm)


def lattice_length(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    return integer_direction(sub_points(q, p))[1]


def matvec(matrix: Sequence[Sequence[int]], v: Sequence) -> tuple:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in matrix)


def rot_cw90(v: Sequence[int]) -> IntVec:
    """Clockwise quarter turn in the plane: (a, b) -> (b, -a)."""
    a, b = v
    return (b, -a)


def rot_ccw90(v: Sequence[int]) -> IntVec:
    a, b = v
    return (-b, a)


def angle_key(v: Sequence) -> tuple[int, Fraction]:
    """Exact sort key for the counterclockwise angle of a nonzero plane vector in [0, 2pi)."""
    x, y = Fraction(v[0]), Fraction(v[1])
    if y == 0 and x > 0:
        return (0, Fraction(0))
    if y > 0:
        # cotangent decreases with angle on (0, pi)
        return (1, -x / y)
    if y == 0:
        return (2, Fraction(0))
    return (3, -x / y)


def cross(o: Sequence, a: Sequence, b: Sequence):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[Sequence]) -> list[tuple]:
    """Counterclockwise hull vertices (no collinear points), starting at the lexicographic minimum."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        chain: list[tuple] = []
        for p in seq:
            while len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def twice_area(polygon: Sequence[Sequence]) -> Fraction:
    """Twice the signed area of a polygon given in order."""
    n = len(polygon)
    return sum(
        (Fraction(polygon[i][0]) * polygon[(i + 1) % n][1] - Fraction(polygon[(i + 1) % n][0]) * polygon[i][1])
        for i in range(n)
    ) if n >= 3 else Fraction(0)
