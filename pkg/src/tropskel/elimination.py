"""Fan-level tropical elimination for curves.

Pushing a weighted balanced curve forward along an integer matrix ``A``
multiplies each cell's weight by the lattice index ``content(A v)`` of its
primitive direction ``v``; overlapping images add up and the total is divided
by the generic degree of the map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InputError, NonIntegralMultiplicity, NotClosed
from .lattice import IntVec, angle_key, content, convex_hull, matvec, primitive, rot_cw90
from .tropicalize import TropicalComplex, check_balancing


@dataclass(frozen=True)
class LatticeMap:
    matrix: tuple[tuple[int, ...], ...]
    delta: int = 1

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if not rows or len({len(r) for r in rows}) != 1 or not rows[0]:
            raise InputError("lattice map needs a nonempty rectangular integer matrix")
        if self.delta <= 0:
            raise InputError("generic degree must be positive")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, n: int) -> "LatticeMap":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0])

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence) -> tuple:
        return matvec(self.matrix, v)

    def compose(self, inner: "LatticeMap") -> "LatticeMap":
        """``self`` after ``inner``; generic degrees multiply."""
        cols = list(zip(*inner.matrix))
        rows = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.matrix)
        return LatticeMap(rows, self.delta * inner.delta)

    def to_dict(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "delta": self.delta}

    @classmethod
    def from_dict(cls, data: Mapping) -> "LatticeMap":
        return cls(tuple(tuple(r) for r in data["matrix"]), int(data.get("delta", 1)))


def collapsed_cells(tc: TropicalComplex, lmap: LatticeMap) -> list[str]:
    """Cells whose direction lies in the kernel of the map."""
    out = []
    for k, s in enumerate(tc.segments):
        d, _ = tc.segment_direction(k)
        if not any(lmap(d)):
            out.append(f"segment {k}")
    for k, r in enumerate(tc.rays):
        if not any(lmap(r.direction)):
            out.append(f"ray {k}")
    return out


def pushforward(
    tc: TropicalComplex, lmap: LatticeMap, merge_collinear: bool = False, require_balanced: bool = True
) -> TropicalComplex:
    if lmap.source_dim != tc.dim:
        raise InputError(f"map expects dimension {lmap.source_dim}, complex has {tc.dim}")
    if require_balanced and not check_balancing(tc).passed:
        raise InputError("pushforward needs a balanced complex")
    segs, rays = [], []
    for k, s in enumerate(tc.segments):
        d, _ = tc.segment_direction(k)
        index = content(lmap(d))
        if index:
            segs.append((lmap(tc.vertices[s.u]), lmap(tc.vertices[s.v]), s.mult * index))
    for r in tc.rays:
        image = lmap(r.direction)
        index = content(image)
        if index:
            rays.append((lmap(tc.vertices[r.base]), primitive(image), r.mult * index))
    raw = TropicalComplex.from_pieces(
        lmap.target_dim, segs, rays, cut_points=[lmap(p) for p in tc.vertices]
    )
    out = _divide(raw, lmap.delta)
    if merge_collinear:
        out = out.merged()
    if require_balanced:
        report = check_balancing(out)
        assert report.passed, f"pushforward lost balancing: {report.failures()}"
    return out


def _divide(tc: TropicalComplex, delta: int) -> TropicalComplex:
    if delta == 1:
        return tc
    for m in [s.mult for s in tc.segments] + [r.mult for r in tc.rays]:
        if m % delta:
            raise NonIntegralMultiplicity(f"multiplicity sum {m} is not divisible by {delta}")
    segs, rays = tc.pieces()
    return TropicalComplex.from_pieces(
        tc.dim,
        [(a, b, m // delta) for a, b, m in segs],
        [(a, d, m // delta) for a, d, m in rays],
    )


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon up to translation, counterclockwise from its lexicographic minimum."""

    vertices: tuple[IntVec, ...]

    @classmethod
    def from_vertices(cls, points: Sequence[Sequence[int]]) -> "LatticePolygon":
        hull = convex_hull([tuple(int(x) for x in p) for p in points])
        if len(hull) < 3:
            raise InputError("polygon needs three non-collinear vertices")
        ox, oy = hull[0]
        return cls(tuple((x - ox, y - oy) for x, y in hull))

    def edges(self) -> list[IntVec]:
        n = len(self.vertices)
        return [
            tuple(b - a for a, b in zip(self.vertices[i], self.vertices[(i + 1) % n]))
            for i in range(n)
        ]

    def to_dict(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}


def newton_polygon_from_curve(tc: TropicalComplex, delta: int = 1) -> LatticePolygon:
    """Dual polygon read off the rays: each ray ``(v, m)`` contributes the edge ``m * rot_cw90(v)``."""
    if tc.dim != 2:
        raise InputError("Newton polygon recovery works for plane curves")
    if not tc.rays:
        raise InputError("curve has no rays")
    by_angle: dict[tuple, list[int]] = {}
    for r in tc.rays:
        if r.mult % delta:
            raise NonIntegralMultiplicity(f"ray multiplicity {r.mult} is not divisible by {delta}")
        m = r.mult // delta
        e = rot_cw90(r.direction)
        key = angle_key(e)
        acc = by_angle.setdefault(key, [0, 0])
        acc[0] += m * e[0]
        acc[1] += m * e[1]
    if any(sum(v[i] for v in by_angle.values()) for i in range(2)):
        raise NotClosed("ray multiplicities do not balance; edge vectors do not close up")
    pts = [(0, 0)]
    for key in sorted(by_angle):
        x, y = pts[-1]
        dx, dy = by_angle[key]
        pts.append((x + dx, y + dy))
    if pts[-1] != (0, 0):
        raise AssertionError("edge chain failed to close")
    return LatticePolygon.from_vertices(pts[:-1])


def newton_polygon_of(exponents: Sequence[Sequence[int]]) -> LatticePolygon:
    return LatticePolygon.from_vertices(exponents)
