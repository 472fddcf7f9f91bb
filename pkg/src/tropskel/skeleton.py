"""Skeleta of punctured curves as metric graphs with rays.

Two constructions are supported: the convex hull of a finite puncture set in
the Berkovich projective line (an ultrametric tree, built from the matrix of
valuations of pairwise differences), and a Tate curve's circle of length
``val(q)`` with rays at the retractions of the punctures.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputError, PositionOutOfRange, TooFewPunctures
from .exactnum import (
    PuiseuxElement,
    fmt_rat,
    format_puiseux,
    pairwise_valuations,
    parse_puiseux,
    rat,
)

INFINITY_ID = "inf"


@dataclass(frozen=True)
class Vertex:
    id: str
    # Gauss point zeta_{center, |t|^depth} for line skeleta
    depth: Fraction | None = None
    center: str | None = None
    # arc-length coordinate in [0, loop_length) for circle skeleta
    position: Fraction | None = None


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    length: Fraction


@dataclass(frozen=True)
class Ray:
    base: str
    puncture: str


@dataclass(frozen=True)
class Skeleton:
    """Finite metric graph plus one infinite ray per puncture.

    ``kind`` is ``"p1"`` for trees inside the projective line, ``"tate"`` for a
    circle with rays, ``"graph"`` for anything loaded without provenance.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    rays: tuple[Ray, ...]
    base_vertex: str
    loops_allowed: bool = False
    kind: str = "graph"
    loop_length: Fraction | None = None
    points: tuple[tuple[str, PuiseuxElement], ...] = ()

    def __post_init__(self):
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate vertex id")
        if self.base_vertex not in ids:
            raise InputError(f"base vertex {self.base_vertex!r} is not a vertex")
        known = set(ids)
        for e in self.edges:
            if e.u not in known or e.v not in known:
                raise InputError(f"edge {e.id} has an unknown endpoint")
            if not e.length > 0:
                raise InputError(f"edge {e.id} has nonpositive length")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise InputError("duplicate edge id")
        punctures = [r.puncture for r in self.rays]
        if len(set(punctures)) != len(punctures):
            raise InputError("a puncture labels more than one ray")
        for r in self.rays:
            if r.base not in known:
                raise InputError(f"ray {r.puncture} has an unknown base")
        if not self._connected():
            raise InputError("skeleton is not connected")
        if self.kind == "p1" and self.betti_number() != 0:
            raise InputError("a line skeleton must be a tree")
        if self.kind == "tate" and self.betti_number() != 1:
            raise InputError("a circle skeleton must have first Betti number 1")

    def _connected(self) -> bool:
        adj = self.adjacency()
        seen = {self.base_vertex}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for _, y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == len(self.vertices)

    def adjacency(self) -> dict[str, list[tuple[Edge, str, int]]]:
        """vertex -> [(edge, other endpoint, +1 if leaving along u->v else -1)]."""
        adj: dict[str, list[tuple[Edge, str, int]]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append((e, e.v, 1))
            adj[e.v].append((e, e.u, -1))
        return adj

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise InputError(f"unknown vertex {vid!r}")

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise InputError(f"unknown edge {eid!r}")

    @property
    def vertex_ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    @property
    def punctures(self) -> list[str]:
        return [r.puncture for r in self.rays]

    def ray_base(self, puncture: str) -> str:
        for r in self.rays:
            if r.puncture == puncture:
                return r.base
        raise InputError(f"unknown puncture {puncture!r}")

    def rays_at(self, vid: str) -> list[Ray]:
        return [r for r in self.rays if r.base == vid]

    def point(self, puncture: str) -> PuiseuxElement:
        return dict(self.points)[puncture]

    def placements(self) -> list["PuncturePlacement"]:
        return [PuncturePlacement(r.puncture, r.base) for r in self.rays]

    def betti_number(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))

    def distances_from(self, vid: str) -> dict[str, Fraction]:
        """Shortest-path metric distances (Dijkstra over exact rationals)."""
        import heapq

        dist = {vid: Fraction(0)}
        heap = [(Fraction(0), vid)]
        adj = self.adjacency()
        done: set[str] = set()
        while heap:
            d, x = heapq.heappop(heap)
            if x in done:
                continue
            done.add(x)
            for e, y, _ in adj[x]:
                nd = d + e.length
                if y not in dist or nd < dist[y]:
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        return dist

    def to_dict(self) -> dict:
        out = {
            "schema": "skeleton.v1",
            "kind": self.kind,
            "base_vertex": self.base_vertex,
            "loops_allowed": self.loops_allowed,
            "vertices": [_vertex_dict(v) for v in self.vertices],
            "edges": [{"id": e.id, "u": e.u, "v": e.v, "len": fmt_rat(e.length)} for e in self.edges],
            "rays": [{"base": r.base, "puncture": r.puncture} for r in self.rays],
        }
        if self.loop_length is not None:
            out["loop_length"] = fmt_rat(self.loop_length)
        if self.points:
            out["points"] = {k: format_puiseux(p) for k, p in self.points}
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "Skeleton":
        if data.get("schema", "skeleton.v1") != "skeleton.v1":
            raise InputError(f"expected schema skeleton.v1, got {data.get('schema')!r}")
        try:
            vertices = tuple(
                Vertex(
                    id=str(v["id"]),
                    depth=rat(v["depth"]) if v.get("depth") is not None else None,
                    center=v.get("center"),
                    position=rat(v["position"]) if v.get("position") is not None else None,
                )
                for v in data["vertices"]
            )
            edges = tuple(
                Edge(str(e.get("id", f"e{i}")), str(e["u"]), str(e["v"]), rat(e["len"]))
                for i, e in enumerate(data["edges"])
            )
            rays = tuple(Ray(str(r["base"]), str(r["puncture"])) for r in data["rays"])
            loop_length = data.get("loop_length")
            return cls(
                vertices=vertices,
                edges=edges,
                rays=rays,
                base_vertex=str(data.get("base_vertex", vertices[0].id)),
                loops_allowed=bool(data.get("loops_allowed", any(e.u == e.v for e in edges))),
                kind=data.get("kind", "graph"),
                loop_length=rat(loop_length) if loop_length is not None else None,
                points=tuple((k, parse_puiseux(v)) for k, v in data.get("points", {}).items()),
            )
        except KeyError as exc:
            raise InputError(f"skeleton.v1 is missing field {exc}") from exc


@dataclass(frozen=True)
class PuncturePlacement:
    puncture: str
    retraction_vertex: str


def _vertex_dict(v: Vertex) -> dict:
    out: dict = {"id": v.id}
    if v.depth is not None:
        out["depth"] = fmt_rat(v.depth)
    if v.center is not None:
        out["center"] = v.center
    if v.position is not None:
        out["position"] = fmt_rat(v.position)
    return out


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def _normalize_points(finite_punctures) -> list[tuple[str, PuiseuxElement]]:
    if isinstance(finite_punctures, Mapping):
        items = [(str(k), v) for k, v in finite_punctures.items()]
    else:
        items = []
        for p in finite_punctures:
            if isinstance(p, tuple):
                items.append((str(p[0]), p[1]))
            else:
                elem = parse_puiseux(p) if isinstance(p, str) else p
                items.append((format_puiseux(elem), elem))
    out = []
    for pid, p in items:
        elem = parse_puiseux(p) if isinstance(p, str) else p
        if pid == INFINITY_ID:
            raise InputError(f"puncture id {INFINITY_ID!r} is reserved for the point at infinity")
        out.append((pid, elem))
    if len({pid for pid, _ in out}) != len(out):
        raise InputError("duplicate puncture id")
    return out


def build_p1_skeleton(finite_punctures, include_infinity: bool = True) -> Skeleton:
    """Minimal skeleton of the projective line minus the given punctures.

    ``finite_punctures`` is a sequence of PuiseuxElements or literals (ids are
    their printed form), a sequence of ``(id, element)`` pairs, or a mapping.
    Clusters are merged with a union-find in order of decreasing meet-depth;
    every merge event at depth ``d`` creates the branch vertex
    ``zeta_{a, |t|^d}``.  Vertices are numbered by depth, then by the smallest
    puncture id they contain.
    """
    pts = _normalize_points(finite_punctures)
    n = len(pts)
    if n + (1 if include_infinity else 0) < 2:
        raise TooFewPunctures("need at least two punctures")
    ids = [pid for pid, _ in pts]
    matrix = pairwise_valuations([p for _, p in pts])

    if n == 1:
        nodes = [("root", Fraction(0), frozenset([0]))]
        children = {"root": [("ray", 0)]}
    else:
        nodes, children = _dendrogram(matrix, n)

    # one Vertex per cluster event; deterministic numbering
    def sort_key(node):
        _, depth, members = node
        return (depth, min(ids[i] for i in members))

    ordered = sorted(nodes, key=sort_key)
    vid = {node[0]: f"v{k}" for k, node in enumerate(ordered)}
    depth_of = {node[0]: node[1] for node in nodes}
    members_of = {node[0]: node[2] for node in nodes}
    vertices = tuple(
        Vertex(vid[name], depth=depth, center=min(ids[i] for i in members))
        for name, depth, members in ordered
    )
    edges: list[Edge] = []
    rays: list[Ray] = []
    for name, _, _ in ordered:
        for kind, child in sorted(
            children[name],
            key=lambda c: (0, ids[c[1]]) if c[0] == "ray" else (1, min(ids[i] for i in members_of[c[1]])),
        ):
            if kind == "ray":
                rays.append(Ray(vid[name], ids[child]))
            else:
                edges.append(Edge("", vid[name], vid[child], depth_of[child] - depth_of[name]))
    edges = [replace(e, id=f"e{k}") for k, e in enumerate(sorted(edges, key=lambda e: (int(e.v[1:]))))]
    root = ordered[0][0]
    if include_infinity:
        rays.insert(0, Ray(vid[root], INFINITY_ID))
    rays.sort(key=lambda r: (int(r.base[1:]), r.puncture != INFINITY_ID, r.puncture))
    return Skeleton(
        vertices=vertices,
        edges=tuple(edges),
        rays=tuple(rays),
        base_vertex=vid[root],
        loops_allowed=False,
        kind="p1",
        points=tuple(pts),
    )


def _dendrogram(matrix, n):
    """Merge events of the ultrametric clustering, deepest first.

    Returns ``(nodes, children)`` where a node is ``(name, depth, members)``
    and each child is ``("ray", index)`` or ``("node", name)``.
    """
    depths = sorted({matrix[i][j] for i in range(n) for j in range(i + 1, n)}, reverse=True)
    uf = _UnionFind(range(n))
    top: dict[int, tuple[str, object]] = {i: ("ray", i) for i in range(n)}
    nodes = []
    children: dict[str, list] = {}
    for d in depths:
        groups: dict[int, set[int]] = defaultdict(set)
        for i in range(n):
            for j in range(i + 1, n):
                if matrix[i][j] == d:
                    groups[uf.find(i)].add(uf.find(j))
                    groups[uf.find(j)].add(uf.find(i))
        # connected components of roots joined at this depth
        seen: set[int] = set()
        for r in sorted(groups):
            if r in seen:
                continue
            comp, stack = set(), [r]
            while stack:
                x = stack.pop()
                if x in comp:
                    continue
                comp.add(x)
                stack.extend(groups[x] - comp)
            seen |= comp
            name = f"n{len(nodes)}"
            members = frozenset(i for i in range(n) if uf.find(i) in comp)
            children[name] = [top[x] for x in sorted(comp)]
            for x in sorted(comp):
                uf.union(r, x)
            top[uf.find(r)] = ("node", name)
            nodes.append((name, d, members))
    return nodes, children


def build_tate_skeleton(loop_length, punctures: Sequence[tuple[str, object]] | Mapping = ()) -> Skeleton:
    """Circle of circumference ``loop_length`` with a ray per puncture.

    Positions are taken modulo the loop length.  Each distinct position gives
    one vertex; with no punctures a single auxiliary vertex carries the loop.
    """
    ell = rat(loop_length)
    if not ell > 0:
        raise InputError("loop length must be positive")
    items = list(punctures.items()) if isinstance(punctures, Mapping) else list(punctures)
    placed = [(str(pid), rat(pos) % ell) for pid, pos in items]
    if len({pid for pid, _ in placed}) != len(placed):
        raise InputError("duplicate puncture id")
    positions = sorted({pos for _, pos in placed}) or [Fraction(0)]
    vid = {pos: f"v{k}" for k, pos in enumerate(positions)}
    vertices = tuple(Vertex(vid[p], position=p) for p in positions)
    edges = []
    k = len(positions)
    for i, p in enumerate(positions):
        q = positions[(i + 1) % k]
        length = (q - p) if i + 1 < k else (ell - p + positions[0])
        edges.append(Edge(f"e{i}", vid[p], vid[q], length))
    rays = tuple(
        Ray(vid[pos], pid) for pid, pos in sorted(placed, key=lambda x: (x[1], x[0]))
    )
    return Skeleton(
        vertices=vertices,
        edges=tuple(edges),
        rays=rays,
        base_vertex=vid[positions[0]],
        loops_allowed=True,
        kind="tate",
        loop_length=ell,
    )


def subdivide(skeleton: Skeleton, edge_id: str, position) -> Skeleton:
    """Split ``edge_id`` at distance ``position`` from its ``u`` endpoint."""
    pos = rat(position)
    edge = skeleton.edge(edge_id)
    if not 0 < pos < edge.length:
        raise PositionOutOfRange(f"position {pos} not inside edge of length {edge.length}")
    taken = {v.id for v in skeleton.vertices}
    k = len(skeleton.vertices)
    while f"v{k}" in taken:
        k += 1
    new_id = f"v{k}"
    u, v = skeleton.vertex(edge.u), skeleton.vertex(edge.v)
    depth = center = position_on_loop = None
    if u.depth is not None and v.depth is not None:
        step = (v.depth - u.depth) / edge.length
        depth = u.depth + step * pos
        center = v.center if v.depth > u.depth else u.center
    if u.position is not None and skeleton.loop_length is not None:
        position_on_loop = (u.position + pos) % skeleton.loop_length
    new_vertex = Vertex(new_id, depth=depth, center=center, position=position_on_loop)
    new_edges = []
    for e in skeleton.edges:
        if e.id == edge_id:
            new_edges.append(Edge(f"{e.id}a", e.u, new_id, pos))
            new_edges.append(Edge(f"{e.id}b", new_id, e.v, e.length - pos))
        else:
            new_edges.append(e)
    return replace(
        skeleton,
        vertices=skeleton.vertices + (new_vertex,),
        edges=tuple(new_edges),
    )
