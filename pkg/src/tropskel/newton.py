"""Plane tropical curves from coefficient valuations (min convention).

The tropical polynomial ``w -> min_u (val(a_u) + <u, w>)`` is dual to the
regular subdivision of its Newton polygon cut out by the lower faces of the
lifted points ``(u, val(a_u))``.  Each lower face with supporting plane
``z = c0 + c1*u1 + c2*u2`` gives a tropical vertex ``(-c1, -c2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import DegenerateCell, InputError, PrecisionLoss
from .exactnum import INF, fmt_rat, rat
from ._parse import parse_expression
from .lattice import content, convex_hull, cross, primitive, rot_ccw90, twice_area
from .tropicalize import TropicalComplex

Exponent = tuple[int, int]


@dataclass(frozen=True)
class TropicalPolynomial:
    terms: tuple[tuple[Exponent, Fraction], ...]

    def __post_init__(self):
        exps = [u for u, _ in self.terms]
        if len(self.terms) < 2:
            raise InputError("a tropical polynomial needs at least two terms")
        if len(set(exps)) != len(exps):
            raise InputError("repeated exponent")
        for u, v in self.terms:
            if len(u) != 2:
                raise InputError(f"exponent {u} is not in Z^2")
            if v is INF:
                raise InputError("coefficient valuations must be finite")

    @classmethod
    def from_mapping(cls, terms: Mapping[Sequence[int], object]) -> "TropicalPolynomial":
        items = sorted((tuple(int(a) for a in u), rat(v)) for u, v in terms.items())
        return cls(tuple(items))

    @classmethod
    def from_string(cls, text: str, dehomogenize: bool = False) -> "TropicalPolynomial":
        """Parse ``"x^2*y + (1/t)*x*y + ..."``; with ``dehomogenize`` a ``z`` is set to 1."""
        names = ("x", "y", "z") if dehomogenize else ("x", "y")
        poly = parse_expression(text, names)
        collected: dict[Exponent, object] = {}
        for k, coeff in poly.items():
            u = (k[0], k[1])
            collected[u] = collected[u] + coeff if u in collected else coeff
        terms = {}
        for u, coeff in collected.items():
            if coeff.is_zero():
                continue
            if not coeff.terms:
                raise PrecisionLoss(f"coefficient of x^{u[0]}*y^{u[1]} has no determined valuation")
            terms[u] = coeff.val()
        return cls.from_mapping(terms)

    @property
    def exponents(self) -> list[Exponent]:
        return [u for u, _ in self.terms]

    def valuation(self, u: Exponent) -> Fraction:
        return dict(self.terms)[u]

    def evaluate(self, w: Sequence) -> Fraction:
        return min(v + u[0] * w[0] + u[1] * w[1] for u, v in self.terms)

    def argmin(self, w: Sequence) -> list[Exponent]:
        best = self.evaluate(w)
        return [u for u, v in self.terms if v + u[0] * w[0] + u[1] * w[1] == best]

    def to_dict(self) -> dict:
        return {
            "schema": "troppoly.v1",
            "terms": [{"exp": list(u), "val": fmt_rat(v)} for u, v in self.terms],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "TropicalPolynomial":
        if data.get("schema") != "troppoly.v1":
            raise InputError(f"expected schema troppoly.v1, got {data.get('schema')!r}")
        try:
            return cls.from_mapping({tuple(t["exp"]): t["val"] for t in data["terms"]})
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed troppoly.v1: {exc}") from None


@dataclass(frozen=True)
class Cell:
    """Lower face of the lifted point set."""

    vertices: tuple[Exponent, ...]  # counterclockwise
    points: tuple[Exponent, ...]  # every exponent whose lift lies on the face
    plane: tuple[Fraction, Fraction, Fraction]  # c0, c1, c2

    @property
    def tropical_vertex(self) -> tuple[Fraction, Fraction]:
        return (-self.plane[1], -self.plane[2])

    def edges(self) -> list[tuple[Exponent, Exponent]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]


@dataclass(frozen=True)
class DualSubdivision:
    polygon: tuple[Exponent, ...]
    cells: tuple[Cell, ...]
    interior_edges: tuple[tuple[int, int, Exponent, Exponent], ...]  # cell, cell, edge
    boundary_edges: tuple[tuple[int, Exponent, Exponent], ...]  # cell, ccw edge

    def is_trivial(self) -> bool:
        return len(self.cells) == 1

    def is_unimodular(self) -> bool:
        return all(
            len(c.vertices) == 3 and len(c.points) == 3 and abs(twice_area(c.vertices)) == 1
            for c in self.cells
        )

    def to_dict(self) -> dict:
        return {
            "polygon": [list(u) for u in self.polygon],
            "cells": [
                {
                    "vertices": [list(u) for u in c.vertices],
                    "points": [list(u) for u in c.points],
                    "plane": [fmt_rat(x) for x in c.plane],
                    "tropical_vertex": [fmt_rat(x) for x in c.tropical_vertex],
                }
                for c in self.cells
            ],
            "adjacency": [[i, j] for i, j, _, _ in self.interior_edges],
        }


def _plane(a, b, c) -> tuple[Fraction, Fraction, Fraction] | None:
    """Affine function through three lifted points, or None if their base points are collinear."""
    (u1, h1), (u2, h2), (u3, h3) = a, b, c
    det = cross(u1, u2, u3)
    if det == 0:
        return None
    x1, y1 = u2[0] - u1[0], u2[1] - u1[1]
    x2, y2 = u3[0] - u1[0], u3[1] - u1[1]
    dh1, dh2 = h2 - h1, h3 - h1
    c1 = Fraction(dh1 * y2 - dh2 * y1, det)
    c2 = Fraction(x1 * dh2 - x2 * dh1, det)
    c0 = h1 - c1 * u1[0] - c2 * u1[1]
    return (c0, c1, c2)


def dual_subdivision(tp: TropicalPolynomial) -> DualSubdivision:
    lifted = list(tp.terms)
    polygon = convex_hull(tp.exponents)
    if len(polygon) < 3:
        raise InputError("Newton polygon is a segment; the curve is a union of parallel lines")

    faces: dict[frozenset, tuple] = {}
    for a, b, c in combinations(lifted, 3):
        plane = _plane(a, b, c)
        if plane is None:
            continue
        c0, c1, c2 = plane
        heights = [(u, h - (c0 + c1 * u[0] + c2 * u[1])) for u, h in lifted]
        if any(d < 0 for _, d in heights):
            continue
        on = frozenset(u for u, d in heights if d == 0)
        faces.setdefault(on, plane)

    cells = []
    for on, plane in sorted(faces.items(), key=lambda kv: sorted(kv[0])):
        cells.append(Cell(tuple(convex_hull(on)), tuple(sorted(on)), plane))
    if sum(twice_area(c.vertices) for c in cells) != twice_area(polygon):
        raise AssertionError("lower faces do not tile the Newton polygon")

    owner: dict[frozenset, list[tuple[int, Exponent, Exponent]]] = {}
    for i, c in enumerate(cells):
        for p, q in c.edges():
            owner.setdefault(frozenset((p, q)), []).append((i, p, q))
    interior, boundary = [], []
    for key in sorted(owner, key=sorted):
        sides = owner[key]
        if len(sides) == 2:
            (i, p, q), (j, _, _) = sides
            interior.append((i, j, p, q))
        elif len(sides) == 1:
            boundary.append(sides[0])
        else:
            raise AssertionError("edge shared by more than two cells")
    return DualSubdivision(tuple(polygon), tuple(cells), tuple(interior), tuple(boundary))


def corner_locus(tp: TropicalPolynomial, subdivision: DualSubdivision | None = None) -> TropicalComplex:
    ds = subdivision or dual_subdivision(tp)
    segs, rays = [], []
    for i, j, p, q in ds.interior_edges:
        edge = (q[0] - p[0], q[1] - p[1])
        m = content(edge)
        if m == 0:
            raise DegenerateCell(f"zero-length dual edge at {p}")
        a, b = ds.cells[i].tropical_vertex, ds.cells[j].tropical_vertex
        if (b[0] - a[0]) * edge[0] + (b[1] - a[1]) * edge[1] != 0:
            raise AssertionError("tropical edge is not perpendicular to its dual edge")
        segs.append((a, b, m))
    for i, p, q in ds.boundary_edges:
        edge = (q[0] - p[0], q[1] - p[1])
        m = content(edge)
        if m == 0:
            raise DegenerateCell(f"zero-length dual edge at {p}")
        rays.append((ds.cells[i].tropical_vertex, primitive(rot_ccw90(edge)), m))
    return TropicalComplex.from_pieces(
        2, segs, rays, cut_points=[c.tropical_vertex for c in ds.cells]
    )


@dataclass(frozen=True)
class DualityCheck:
    passed: bool
    failures: tuple[str, ...]


def verify_duality(tp: TropicalPolynomial, ds: DualSubdivision) -> DualityCheck:
    """At each tropical vertex the cell's exponents attain the minimum and all others exceed it."""
    failures = []
    for c in ds.cells:
        w = c.tropical_vertex
        values = {u: v + u[0] * w[0] + u[1] * w[1] for u, v in tp.terms}
        low = min(values.values())
        attained = {u for u, x in values.items() if x == low}
        if attained != set(c.points):
            failures.append(f"cell {list(c.vertices)}: minimum attained on {sorted(attained)}")
    return DualityCheck(not failures, tuple(failures))


@dataclass(frozen=True)
class Crosscheck:
    equal: bool
    only_first: tuple[str, ...]
    only_second: tuple[str, ...]


def crosscheck_parametric(tc_newton: TropicalComplex, tc_param: TropicalComplex) -> Crosscheck:
    """Compare two plane complexes as weighted point sets."""
    if tc_newton.dim != 2 or tc_param.dim != 2:
        raise InputError("cross-check compares plane complexes")
    a, b = tc_newton.merged(), tc_param.merged()
    ka, kb = a.weighted_key(), b.weighted_key()
    left = TropicalComplex.from_pieces(2, *_split(ka - kb))
    right = TropicalComplex.from_pieces(2, *_split(kb - ka))
    return Crosscheck(ka == kb, tuple(left.describe()), tuple(right.describe()))


def _split(items):
    segs = [(a, b, m) for kind, a, b, m in items if kind == "seg"]
    rays = [(a, d, m) for kind, a, d, m in items if kind == "ray"]
    return segs, rays
