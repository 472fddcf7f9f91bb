"""Combinatorial certificates read off a tropical curve.

Every check runs on the merged (minimal) presentation of the complex, so
2-valent subdivision points never count as vertices.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import _linalg
from .errors import CycleNotInHyperplane, InputError, MultipleCycles, NoCycle
from .exactnum import fmt_rat, rat
from .tropicalize import (
    TropicalComplex,
    betti_one,
    bridgeless_core,
    check_balancing,
    component_labels,
)

CERTIFIED = "CERTIFIED"
NOT_CERTIFIED = "NOT_CERTIFIED"
REFUTED = "REFUTED"
VERDICTS = (CERTIFIED, NOT_CERTIFIED, REFUTED)


@dataclass(frozen=True)
class Certificate:
    verdict: str
    rule: str
    witness: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise InputError(f"unknown verdict {self.verdict!r}")

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_dict(self) -> dict:
        return {"schema": "certificate.v1", "verdict": self.verdict, "rule": self.rule, "witness": dict(self.witness)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Certificate":
        if data.get("schema") != "certificate.v1":
            raise InputError(f"expected schema certificate.v1, got {data.get('schema')!r}")
        return cls(data["verdict"], data["rule"], data.get("witness", {}))


def _pt(p) -> list[str]:
    return [fmt_rat(c) for c in p]


def _resolve_vertex(tc: TropicalComplex, vertex) -> int:
    if isinstance(vertex, int):
        if not 0 <= vertex < len(tc.vertices):
            raise InputError(f"vertex index {vertex} out of range")
        return vertex
    return tc.vertex_index(vertex)


def vertex_mult_one(tc: TropicalComplex, vertex) -> Certificate:
    """Sufficient conditions for the tropical vertex to have multiplicity one."""
    tc = tc.merged()
    i = _resolve_vertex(tc, vertex)
    inc = tc.incident(i)
    mults = [x.mult for x in inc]
    residual = check_balancing(tc).residuals[i][2]
    witness = {"vertex": _pt(tc.vertices[i]), "valence": len(inc), "multiplicities": mults}
    if any(residual):
        witness["residual"] = list(residual)
        return Certificate(NOT_CERTIFIED, "balancing", witness)
    if len(inc) == 3 and 1 in mults:
        return Certificate(CERTIFIED, "trivalent-with-multiplicity-one", witness)
    span = _linalg.rank([x.direction for x in inc])
    witness["span_dimension"] = span
    if span == len(inc) - 1 and math.gcd(*mults) == 1:
        return Certificate(CERTIFIED, "independent-directions-gcd-one", witness)
    return Certificate(NOT_CERTIFIED, "no-sufficient-condition", witness)


def _core_components(tc: TropicalComplex) -> list[list[int]]:
    """Bridgeless-core segments grouped by connected component."""
    core = bridgeless_core(tc)
    edges = [(tc.segments[k].u, tc.segments[k].v) for k in core]
    labels = component_labels(len(tc.vertices), edges)
    groups: dict[int, list[int]] = {}
    for k in core:
        groups.setdefault(labels[tc.segments[k].u], []).append(k)
    return sorted(groups.values())


def _segment_betti(tc: TropicalComplex, segs: Sequence[int]) -> int:
    verts = {x for k in segs for x in (tc.segments[k].u, tc.segments[k].v)}
    return len(segs) - len(verts) + 1 if segs else 0


def _hypotheses(tc: TropicalComplex) -> dict:
    bad_mult = [f"segment {k}" for k, s in enumerate(tc.segments) if s.mult != 1]
    bad_mult += [f"ray {k}" for k, r in enumerate(tc.rays) if r.mult != 1]
    bad_valence = [
        {"vertex": _pt(p), "valence": tc.valence(i)}
        for i, p in enumerate(tc.vertices)
        if tc.valence(i) != 3
    ]
    return {"non_unit_multiplicity": bad_mult, "non_trivalent": bad_valence}


def certify_faithful(tc: TropicalComplex, curve_genus: int) -> Certificate:
    """Isometry criterion: trivalent, multiplicity one, bridgeless subgraph of the right genus."""
    if curve_genus < 0:
        raise InputError("genus must be nonnegative")
    tc = tc.merged()
    total = betti_one(tc)
    comps = _core_components(tc)
    bettis = [_segment_betti(tc, c) for c in comps]
    witness: dict = {"betti": total, "core_component_betti": bettis}
    match = next((c for c, b in zip(comps, bettis) if b == curve_genus), None)
    if curve_genus == 0:
        match = [] if total == 0 else None
    if match is None:
        return Certificate(NOT_CERTIFIED, "no-bridgeless-subgraph-of-genus", witness)
    witness["subgraph"] = [
        [_pt(tc.vertices[tc.segments[k].u]), _pt(tc.vertices[tc.segments[k].v])] for k in match
    ]
    hyp = _hypotheses(tc)
    witness.update(hyp)
    if hyp["non_unit_multiplicity"]:
        return Certificate(NOT_CERTIFIED, "multiplicity-one", witness)
    if hyp["non_trivalent"]:
        return Certificate(NOT_CERTIFIED, "trivalent", witness)
    return Certificate(CERTIFIED, "unimodular-isometry", witness)


def _unique_cycle(tc: TropicalComplex) -> list[int]:
    b = betti_one(tc)
    if b == 0:
        raise NoCycle("complex has no cycle")
    if b > 1:
        raise MultipleCycles(f"complex has first Betti number {b}")
    return bridgeless_core(tc)


def kmm_check(tc: TropicalComplex, val_j) -> Certificate:
    """Compare the lattice length of the cycle with ``-val(j)``."""
    tc = tc.merged()
    val_j = rat(val_j)
    cycle = _unique_cycle(tc)
    length = sum((tc.lattice_length(k) for k in cycle), Fraction(0))
    hyp = _hypotheses(tc)
    witness = {
        "cycle_length": fmt_rat(length),
        "minus_val_j": fmt_rat(-val_j),
        "length_matches": length == -val_j,
        **hyp,
    }
    if hyp["non_unit_multiplicity"] or hyp["non_trivalent"]:
        return Certificate(NOT_CERTIFIED, "hypotheses-fail", witness)
    if length == -val_j:
        return Certificate(CERTIFIED, "cycle-length-equals-minus-val-j", witness)
    return Certificate(REFUTED, "cycle-length-differs", witness)


def _distances(tc: TropicalComplex, sources: set[int]) -> dict[int, Fraction]:
    adj: dict[int, list[tuple[int, Fraction]]] = {i: [] for i in range(len(tc.vertices))}
    for k, s in enumerate(tc.segments):
        w = tc.lattice_length(k)
        adj[s.u].append((s.v, w))
        adj[s.v].append((s.u, w))
    dist = {i: Fraction(0) for i in sources}
    heap = [(Fraction(0), i) for i in sorted(sources)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist.get(x, d):
            continue
        for y, w in adj[x]:
            if y not in dist or d + w < dist[y]:
                dist[y] = d + w
                heapq.heappush(heap, (d + w, y))
    return dist


def well_spaced_check(tc: TropicalComplex, hyperplane: tuple[Sequence[int], object]) -> Certificate:
    """Tropical well-spacedness: the off-hyperplane part is not closest to the cycle at a single point."""
    tc = tc.merged()
    normal, level = tuple(int(x) for x in hyperplane[0]), rat(hyperplane[1])
    if len(normal) != tc.dim:
        raise InputError("hyperplane normal has the wrong dimension")

    def height(p):
        return sum(a * x for a, x in zip(normal, p))

    cycle = _unique_cycle(tc)
    cycle_vertices = {x for k in cycle for x in (tc.segments[k].u, tc.segments[k].v)}
    off = [tc.vertices[i] for i in sorted(cycle_vertices) if height(tc.vertices[i]) != level]
    if off:
        raise CycleNotInHyperplane(f"cycle vertex {_pt(off[0])} is off the hyperplane")

    in_h = [height(p) == level for p in tc.vertices]
    w_segments = [k for k, s in enumerate(tc.segments) if not (in_h[s.u] and in_h[s.v])]
    w_rays = [
        k for k, r in enumerate(tc.rays)
        if not (in_h[r.base] and sum(a * d for a, d in zip(normal, r.direction)) == 0)
    ]
    w_valence: dict[int, int] = {}
    for k in w_segments:
        for x in (tc.segments[k].u, tc.segments[k].v):
            w_valence[x] = w_valence.get(x, 0) + 1
    for k in w_rays:
        w_valence[tc.rays[k].base] = w_valence.get(tc.rays[k].base, 0) + 1

    hyp = _hypotheses(tc)
    if not w_valence:
        return Certificate(CERTIFIED, "off-hyperplane-part-empty", {**hyp, "components": []})

    dist = _distances(tc, cycle_vertices)
    points = sorted(w_valence)
    best = min(dist[i] for i in points)
    closest = [i for i in points if dist[i] == best]
    two_point = len(closest) >= 2
    valence_escape = any(w_valence[i] >= 3 for i in closest)

    # per-component attachment data
    index = {x: n for n, x in enumerate(points)}
    edges = [(index[tc.segments[k].u], index[tc.segments[k].v]) for k in w_segments]
    labels = component_labels(len(points), edges)
    components = []
    for lab in sorted(set(labels)):
        members = [points[n] for n in range(len(points)) if labels[n] == lab]
        d = min(dist[i] for i in members)
        components.append({
            "distance": fmt_rat(d),
            "closest_points": [_pt(tc.vertices[i]) for i in members if dist[i] == d],
        })

    witness = {
        "minimum_distance": fmt_rat(best),
        "closest_points": [
            {"point": _pt(tc.vertices[i]), "valence_in_W": w_valence[i]} for i in closest
        ],
        "attained_twice": two_point,
        "valence_three_escape": valence_escape,
        "components": components,
        **hyp,
    }
    if two_point:
        return Certificate(CERTIFIED, "minimum-attained-twice", witness)
    if valence_escape:
        return Certificate(CERTIFIED, "closest-point-valence-three", witness)
    return Certificate(REFUTED, "unique-closest-point", witness)
