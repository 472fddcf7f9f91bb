"""Tropicalization of a skeleton through PL coordinate functions.

The image of the skeleton under ``(F_1, ..., F_n)`` is assembled from one
piece per non-collapsed edge or ray.  Pieces are cut at every vertex image
and every piece endpoint, coincident pieces are merged with multiplicities
added, and an optional pass re-joins collinear pieces of equal weight.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DisconnectedComplex, InputError
from .exactnum import fmt_rat, rat
from .lattice import IntVec, Point, content, integer_direction, primitive, sub_points
from .potential import PLFunction
from .skeleton import Skeleton


@dataclass(frozen=True)
class Segment:
    u: int
    v: int
    mult: int


@dataclass(frozen=True)
class TRay:
    base: int
    direction: IntVec
    mult: int


@dataclass(frozen=True)
class Incidence:
    kind: str  # "seg" or "ray"
    index: int
    direction: IntVec  # primitive, pointing away from the vertex
    mult: int


@dataclass(frozen=True)
class TropicalComplex:
    """Weighted rational polyhedral curve in Q^n.

    Build instances with :meth:`from_pieces` to get the canonical
    (refined, coincidences merged, vertices sorted) form.
    """

    dim: int
    vertices: tuple[Point, ...] = ()
    segments: tuple[Segment, ...] = ()
    rays: tuple[TRay, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("ambient dimension must be positive")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertices")
        for p in self.vertices:
            if len(p) != self.dim:
                raise InputError(f"vertex {p} has wrong dimension")
        n = len(self.vertices)
        for s in self.segments:
            if not (0 <= s.u < n and 0 <= s.v < n) or s.u == s.v:
                raise InputError(f"bad segment endpoints {s.u}, {s.v}")
            if s.mult <= 0:
                raise InputError("segment multiplicities must be positive")
        for r in self.rays:
            if not 0 <= r.base < n:
                raise InputError(f"bad ray base {r.base}")
            if len(r.direction) != self.dim or content(r.direction) != 1:
                raise InputError(f"ray direction {r.direction} is not primitive")
            if r.mult <= 0:
                raise InputError("ray multiplicities must be positive")

    # -- construction ---------------------------------------------------

    @classmethod
    def empty(cls, dim: int) -> "TropicalComplex":
        return cls(dim)

    @classmethod
    def from_pieces(
        cls,
        dim: int,
        segments: Iterable[tuple[Sequence, Sequence, int]] = (),
        rays: Iterable[tuple[Sequence, Sequence[int], int]] = (),
        cut_points: Iterable[Sequence] = (),
        merge_collinear: bool = False,
    ) -> "TropicalComplex":
        """Overlay weighted segments ``(p, q, m)`` and rays ``(base, dir, m)``.

        Ray directions are primitivized without touching the multiplicity.
        """
        pieces = []
        for p, q, m in segments:
            p, q = _pt(p), _pt(q)
            if p == q:
                raise InputError("degenerate segment")
            pieces.append(("seg", p, q, int(m)))
        for b, d, m in rays:
            pieces.append(("ray", _pt(b), primitive(d), int(m)))
        for piece in pieces:
            if len(piece[1]) != dim or len(piece[2]) != dim:
                raise InputError("piece has wrong dimension")
        merged = _overlay(pieces, [_pt(c) for c in cut_points])
        if merge_collinear:
            merged = _merge_collinear(merged)
        return _from_merged(dim, merged)

    def pieces(self):
        segs = [(self.vertices[s.u], self.vertices[s.v], s.mult) for s in self.segments]
        rays = [(self.vertices[r.base], r.direction, r.mult) for r in self.rays]
        return segs, rays

    def refined(self) -> "TropicalComplex":
        segs, rays = self.pieces()
        return TropicalComplex.from_pieces(self.dim, segs, rays)

    def merged(self) -> "TropicalComplex":
        """Minimal presentation: 2-valent collinear vertices of equal weight removed."""
        segs, rays = self.pieces()
        return TropicalComplex.from_pieces(self.dim, segs, rays, merge_collinear=True)

    # -- queries --------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.segments and not self.rays

    def vertex_index(self, point: Sequence) -> int:
        p = _pt(point)
        try:
            return self.vertices.index(p)
        except ValueError:
            raise InputError(f"{_fmt_point(p)} is not a vertex") from None

    def segment_direction(self, k: int) -> tuple[IntVec, Fraction]:
        s = self.segments[k]
        return integer_direction(sub_points(self.vertices[s.v], self.vertices[s.u]))

    def lattice_length(self, k: int) -> Fraction:
        return self.segment_direction(k)[1]

    def incident(self, i: int) -> list[Incidence]:
        out = []
        for k, s in enumerate(self.segments):
            if i in (s.u, s.v):
                d, _ = self.segment_direction(k)
                if i == s.v:
                    d = tuple(-x for x in d)
                out.append(Incidence("seg", k, d, s.mult))
        for k, r in enumerate(self.rays):
            if r.base == i:
                out.append(Incidence("ray", k, r.direction, r.mult))
        return out

    def valence(self, i: int) -> int:
        return len(self.incident(i))

    def weighted_key(self) -> frozenset:
        """Hashable description of the weighted point set (use on merged forms)."""
        items = []
        for s in self.segments:
            a, b = sorted((self.vertices[s.u], self.vertices[s.v]))
            items.append(("seg", a, b, s.mult))
        for r in self.rays:
            items.append(("ray", self.vertices[r.base], r.direction, r.mult))
        return frozenset(items)

    def describe(self) -> list[str]:
        out = []
        for s in self.segments:
            a, b = self.vertices[s.u], self.vertices[s.v]
            out.append(f"segment {_fmt_point(a)}--{_fmt_point(b)} mult {s.mult}")
        for r in self.rays:
            d = ",".join(str(x) for x in r.direction)
            out.append(f"ray {_fmt_point(self.vertices[r.base])} dir ({d}) mult {r.mult}")
        return out

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema": "tropcomplex.v1",
            "dim": self.dim,
            "vertices": [[fmt_rat(c) for c in p] for p in self.vertices],
            "segments": [{"u": s.u, "v": s.v, "mult": s.mult} for s in self.segments],
            "rays": [{"base": r.base, "dir": list(r.direction), "mult": r.mult} for r in self.rays],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "TropicalComplex":
        if data.get("schema") != "tropcomplex.v1":
            raise InputError(f"expected schema tropcomplex.v1, got {data.get('schema')!r}")
        try:
            verts = tuple(tuple(rat(c) for c in p) for p in data["vertices"])
            dim = int(data.get("dim", len(verts[0]) if verts else 2))
            segs = tuple(Segment(int(s["u"]), int(s["v"]), int(s["mult"])) for s in data.get("segments", []))
            rays = tuple(
                TRay(int(r["base"]), tuple(int(x) for x in r["dir"]), int(r["mult"]))
                for r in data.get("rays", [])
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise InputError(f"malformed tropcomplex.v1: {exc}") from None
        return cls(dim, verts, segs, rays)


def _pt(p: Sequence) -> Point:
    return tuple(rat(c) for c in p)


def _fmt_point(p: Point) -> str:
    return "(" + ",".join(fmt_rat(c) for c in p) + ")"


# -- overlay --------------------------------------------------------------

def _param(base: Point, direction: Sequence, x: Point) -> Fraction | None:
    """lambda with x = base + lambda * direction, or None if x is off the line."""
    k = next(i for i, d in enumerate(direction) if d != 0)
    lam = (x[k] - base[k]) / Fraction(direction[k])
    if all(b + lam * d == xi for b, d, xi in zip(base, direction, x)):
        return lam
    return None


def _overlay(pieces, extra_cuts):
    cuts = set(extra_cuts)
    for kind, a, b, _ in pieces:
        cuts.add(a)
        if kind == "seg":
            cuts.add(b)

    acc: dict[tuple, int] = defaultdict(int)
    for kind, a, b, m in pieces:
        direction = sub_points(b, a) if kind == "seg" else b
        lams = set()
        for x in cuts:
            lam = _param(a, direction, x)
            if lam is not None and lam > 0 and (kind == "ray" or lam < 1):
                lams.add(lam)
        stops = [a] + [tuple(ai + lam * d for ai, d in zip(a, direction)) for lam in sorted(lams)]
        if kind == "seg":
            stops.append(b)
            for p, q in zip(stops, stops[1:]):
                acc[("seg",) + tuple(sorted((p, q)))] += m
        else:
            for p, q in zip(stops, stops[1:]):
                acc[("seg",) + tuple(sorted((p, q)))] += m
            acc[("ray", stops[-1], b)] += m
    return [(k[0], k[1], k[2], m) for k, m in acc.items()]


def _merge_collinear(pieces):
    pieces = list(pieces)
    while True:
        at: dict[Point, list[int]] = defaultdict(list)
        for idx, (kind, a, b, _) in enumerate(pieces):
            at[a].append(idx)
            if kind == "seg":
                at[b].append(idx)
        for x in sorted(at):
            pair = at[x]
            if len(pair) != 2:
                continue
            p1, p2 = (pieces[i] for i in pair)
            if p1[3] != p2[3] or (p1[0] == "ray" and p2[0] == "ray"):
                continue
            if _outgoing(p1, x) != tuple(-c for c in _outgoing(p2, x)):
                continue
            if p1[0] == "ray":
                p1, p2 = p2, p1
            far = p1[2] if p1[1] == x else p1[1]
            if p2[0] == "ray":
                new = ("ray", far, p2[2], p1[3])
            else:
                other = p2[2] if p2[1] == x else p2[1]
                new = ("seg",) + tuple(sorted((far, other))) + (p1[3],)
            pieces = [pc for i, pc in enumerate(pieces) if i not in pair] + [new]
            break
        else:
            return pieces


def _outgoing(piece, x: Point) -> IntVec:
    kind, a, b, _ = piece
    if kind == "ray":
        return b
    d, _ = integer_direction(sub_points(b, a) if a == x else sub_points(a, b))
    return d


def _from_merged(dim: int, pieces) -> TropicalComplex:
    points = set()
    for kind, a, b, _ in pieces:
        points.add(a)
        if kind == "seg":
            points.add(b)
    verts = tuple(sorted(points))
    index = {p: i for i, p in enumerate(verts)}
    segs = [Segment(index[a], index[b], m) for kind, a, b, m in pieces if kind == "seg"]
    segs.sort(key=lambda s: (s.u, s.v))
    rays = [TRay(index[a], b, m) for kind, a, b, m in pieces if kind == "ray"]
    rays.sort(key=lambda r: (r.base, r.direction))
    return TropicalComplex(dim, verts, tuple(segs), tuple(rays))


# -- tropicalization --------------------------------------------------------

@dataclass(frozen=True)
class ExpansionEntry:
    kind: str  # "edge" or "ray"
    id: str
    slopes: IntVec
    m_rel: int
    image: str  # "point", "segment" or "ray"
    source: Point
    target: Point | IntVec | None = None  # segment end, or ray direction

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "id": self.id,
            "slopes": list(self.slopes),
            "m_rel": self.m_rel,
            "image": self.image,
            "at": [fmt_rat(c) for c in self.source],
        }
        if self.image == "segment":
            out["to"] = [fmt_rat(c) for c in self.target]
        elif self.image == "ray":
            out["dir"] = list(self.target)
        return out


@dataclass(frozen=True)
class EdgeExpansionReport:
    entries: tuple[ExpansionEntry, ...]

    def m_rel(self, ident: str, kind: str = "edge") -> int:
        return self._get(ident, kind).m_rel

    def entry(self, ident: str, kind: str = "edge") -> ExpansionEntry:
        return self._get(ident, kind)

    def _get(self, ident: str, kind: str) -> ExpansionEntry:
        for e in self.entries:
            if e.id == ident and e.kind == kind:
                return e
        raise KeyError(f"no {kind} {ident!r} in report")

    def collapsed(self) -> list[str]:
        return [e.id for e in self.entries if e.m_rel == 0]

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries]}


def vertex_images(coords: Sequence[PLFunction]) -> dict[str, Point]:
    tables = [pl.values() for pl in coords]
    return {v: tuple(t[v] for t in tables) for v in coords[0].skeleton.vertex_ids}


def trop_map(
    skeleton: Skeleton, coords: Sequence[PLFunction], merge_collinear: bool = False
) -> tuple[TropicalComplex, EdgeExpansionReport]:
    if not coords:
        raise InputError("need at least one coordinate function")
    for pl in coords:
        if pl.skeleton != skeleton:
            raise InputError("coordinate potentials must live on the given skeleton")
    images = vertex_images(coords)
    n = len(coords)
    entries: list[ExpansionEntry] = []
    segs, rays = [], []

    for e in skeleton.edges:
        s = tuple(pl.slope(e.id) for pl in coords)
        m = content(s)
        p, q = images[e.u], images[e.v]
        if m == 0:
            entries.append(ExpansionEntry("edge", e.id, s, 0, "point", p))
            continue
        _, length = integer_direction(sub_points(q, p))
        assert length == m * e.length, f"length mismatch on {e.id}"
        entries.append(ExpansionEntry("edge", e.id, s, m, "segment", p, q))
        segs.append((p, q, m))

    for r in skeleton.rays:
        s = tuple(pl.ray_slope(r.puncture) for pl in coords)
        m = content(s)
        b = images[r.base]
        if m == 0:
            entries.append(ExpansionEntry("ray", r.puncture, s, 0, "point", b))
            continue
        d = primitive(s)
        entries.append(ExpansionEntry("ray", r.puncture, s, m, "ray", b, d))
        rays.append((b, d, m))

    tc = TropicalComplex.from_pieces(
        n, segs, rays, cut_points=images.values(), merge_collinear=merge_collinear
    )
    return tc, EdgeExpansionReport(tuple(entries))


# -- balancing and topology ---------------------------------------------------

@dataclass(frozen=True)
class BalancingReport:
    residuals: tuple[tuple[int, Point, IntVec], ...]

    @property
    def passed(self) -> bool:
        return all(not any(r) for _, _, r in self.residuals)

    def failures(self) -> list[tuple[int, Point, IntVec]]:
        return [x for x in self.residuals if any(x[2])]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "residuals": [
                {"vertex": i, "at": [fmt_rat(c) for c in p], "residual": list(r)}
                for i, p, r in self.residuals
            ],
        }


def check_balancing(tc: TropicalComplex) -> BalancingReport:
    out = []
    for i, p in enumerate(tc.vertices):
        total = [0] * tc.dim
        for inc in tc.incident(i):
            for k in range(tc.dim):
                total[k] += inc.mult * inc.direction[k]
        out.append((i, p, tuple(total)))
    return BalancingReport(tuple(out))


def component_labels(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Union-find representative of each of ``n`` nodes."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return [find(x) for x in range(n)]


def _components(n: int, edges: Iterable[tuple[int, int]]) -> int:
    return len(set(component_labels(n, edges)))


def betti_one(tc: TropicalComplex) -> int:
    n = len(tc.vertices)
    if n == 0:
        return 0
    edges = [(s.u, s.v) for s in tc.segments]
    c = _components(n, edges)
    if c != 1:
        raise DisconnectedComplex(f"complex has {c} connected components")
    return len(edges) - n + 1


def bridgeless_core(tc: TropicalComplex) -> list[int]:
    """Indices of segments that lie on some cycle (the 2-edge-connected core)."""
    n = len(tc.vertices)
    edges = [(s.u, s.v) for s in tc.segments]
    base = _components(n, edges)
    return [
        k for k in range(len(edges))
        if _components(n, edges[:k] + edges[k + 1:]) == base
    ]


def core_complex(tc: TropicalComplex) -> TropicalComplex:
    segs = [tc.segments[k] for k in bridgeless_core(tc)]
    return TropicalComplex.from_pieces(
        tc.dim, [(tc.vertices[s.u], tc.vertices[s.v], s.mult) for s in segs]
    )


def cycle_length(tc: TropicalComplex) -> Fraction:
    """Total lattice length of the bridgeless core."""
    return sum((tc.lattice_length(k) for k in bridgeless_core(tc)), Fraction(0))
