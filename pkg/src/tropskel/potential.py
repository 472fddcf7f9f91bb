"""Piecewise-linear potentials F = val(f) = -log|f| on a skeleton.

Given the divisor of f (supported on punctures), F is the unique function
that is linear on edges, has slope ``ord_x(f)`` along the ray toward each
puncture ``x``, and is harmonic (outgoing slopes sum to zero) at every
vertex.  We solve for vertex values with an exact graph-Laplacian system
pinned at the base vertex, then read off slopes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping

from . import _linalg
from .errors import DegreeNonZero, InputError, NonPrincipalOnTate
from .exactnum import INF, fmt_rat, rat, sub, val
from .skeleton import INFINITY_ID, Skeleton


@dataclass(frozen=True, init=False)
class Divisor:
    """Degree-zero integer combination of punctures."""

    orders: tuple[tuple[str, int], ...]

    def __init__(self, orders: Mapping[str, int] | None = None, **kw: int):
        acc: dict[str, int] = {}
        for pid, n in {**(orders or {}), **kw}.items():
            if isinstance(n, bool) or int(n) != n:
                raise InputError(f"divisor order for {pid!r} is not an integer")
            acc[str(pid)] = acc.get(str(pid), 0) + int(n)
        items = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        if sum(v for _, v in items) != 0:
            raise DegreeNonZero(f"divisor has degree {sum(v for _, v in items)}")
        object.__setattr__(self, "orders", items)

    def __getitem__(self, pid: str) -> int:
        return dict(self.orders).get(pid, 0)

    def support(self) -> list[str]:
        return [k for k, _ in self.orders]

    @property
    def degree(self) -> int:
        return sum(v for _, v in self.orders)

    def __add__(self, other: "Divisor") -> "Divisor":
        acc = dict(self.orders)
        for k, v in other.orders:
            acc[k] = acc.get(k, 0) + v
        return Divisor(acc)

    def __neg__(self) -> "Divisor":
        return Divisor({k: -v for k, v in self.orders})

    def to_dict(self) -> dict:
        return {"schema": "divisor.v1", "orders": dict(self.orders)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Divisor":
        if "schema" in data:
            if data["schema"] != "divisor.v1":
                raise InputError(f"expected schema divisor.v1, got {data['schema']!r}")
            return cls(data["orders"])
        return cls(data)


@dataclass(frozen=True)
class PLFunction:
    """Integer slopes on a skeleton plus the value at its base vertex.

    ``slopes`` gives the slope along each edge in its stored ``u -> v``
    orientation; reversing the orientation negates it.
    """

    skeleton: Skeleton
    slopes: tuple[tuple[str, int], ...]
    ray_slopes: tuple[tuple[str, int], ...]
    base_value: Fraction = Fraction(0)

    def slope(self, edge_id: str) -> int:
        return dict(self.slopes)[edge_id]

    def ray_slope(self, puncture: str) -> int:
        return dict(self.ray_slopes)[puncture]

    def values(self) -> dict[str, Fraction]:
        """Integrate slopes outward from the base vertex along a spanning tree."""
        slopes = dict(self.slopes)
        adj = self.skeleton.adjacency()
        out = {self.skeleton.base_vertex: self.base_value}
        queue = deque([self.skeleton.base_vertex])
        while queue:
            x = queue.popleft()
            for e, y, sign in adj[x]:
                if y not in out:
                    out[y] = out[x] + sign * slopes[e.id] * e.length
                    queue.append(y)
        return out

    def outgoing(self, vertex: str) -> list[tuple[str, int]]:
        """(direction label, outgoing slope) for every tangent direction at ``vertex``."""
        slopes = dict(self.slopes)
        out = []
        for e, _, sign in self.skeleton.adjacency()[vertex]:
            out.append((f"{e.id}{'+' if sign > 0 else '-'}", sign * slopes[e.id]))
        for r in self.skeleton.rays_at(vertex):
            out.append((f"ray:{r.puncture}", self.ray_slope(r.puncture)))
        return out

    def cycle_defects(self) -> list[tuple[str, Fraction]]:
        """Edges whose slope disagrees with the integrated vertex values."""
        vals = self.values()
        bad = []
        for e in self.skeleton.edges:
            expected = vals[e.v] - vals[e.u]
            if self.slope(e.id) * e.length != expected:
                bad.append((e.id, self.slope(e.id) * e.length - expected))
        return bad

    def shifted(self, delta) -> "PLFunction":
        return replace(self, base_value=self.base_value + rat(delta))

    def with_base_value(self, value) -> "PLFunction":
        return replace(self, base_value=rat(value))

    def __add__(self, other: "PLFunction") -> "PLFunction":
        if other.skeleton != self.skeleton:
            raise InputError("cannot add potentials on different skeleta")
        a, b = dict(self.slopes), dict(other.slopes)
        ra, rb = dict(self.ray_slopes), dict(other.ray_slopes)
        return PLFunction(
            self.skeleton,
            tuple((k, a[k] + b[k]) for k in a),
            tuple((k, ra[k] + rb[k]) for k in ra),
            self.base_value + other.base_value,
        )

    def to_dict(self, include_skeleton: bool = True) -> dict:
        out = {
            "schema": "plfunction.v1",
            "slopes": dict(self.slopes),
            "ray_slopes": dict(self.ray_slopes),
            "base_value": fmt_rat(self.base_value),
        }
        if include_skeleton:
            out["skeleton"] = self.skeleton.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: Mapping, skeleton: Skeleton | None = None) -> "PLFunction":
        if data.get("schema", "plfunction.v1") != "plfunction.v1":
            raise InputError(f"expected schema plfunction.v1, got {data.get('schema')!r}")
        if skeleton is None:
            if "skeleton" not in data:
                raise InputError("plfunction.v1 needs an embedded skeleton or an explicit one")
            skeleton = Skeleton.from_dict(data["skeleton"])
        slopes = {str(k): int(v) for k, v in data["slopes"].items()}
        rays = {str(k): int(v) for k, v in data["ray_slopes"].items()}
        if set(slopes) != {e.id for e in skeleton.edges} or set(rays) != set(skeleton.punctures):
            raise InputError("plfunction.v1 slopes do not match the skeleton")
        return cls(
            skeleton,
            tuple((e.id, slopes[e.id]) for e in skeleton.edges),
            tuple((p, rays[p]) for p in skeleton.punctures),
            rat(data.get("base_value", "0")),
        )


def _check_support(skeleton: Skeleton, divisor: Divisor) -> None:
    missing = [p for p in divisor.support() if p not in set(skeleton.punctures)]
    if missing:
        raise InputError(f"divisor points {missing} are not punctures of the skeleton")


def solve_slope(skeleton: Skeleton, divisor: Divisor | Mapping[str, int]) -> PLFunction:
    """Potential of a principal divisor, normalized to 0 at the base vertex.

    Raises ``NonPrincipalOnTate`` when the exact solution has non-integral
    slopes, which on a graph with a cycle means the divisor class is nontrivial.
    """
    if not isinstance(divisor, Divisor):
        divisor = Divisor(divisor)
    if divisor.degree != 0:
        raise DegreeNonZero(f"divisor has degree {divisor.degree}")
    _check_support(skeleton, divisor)

    ids = skeleton.vertex_ids
    index = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    rhs = [Fraction(0)] * n
    for e in skeleton.edges:
        if e.u == e.v:
            continue
        i, j = index[e.u], index[e.v]
        w = 1 / e.length
        matrix[i][i] -= w
        matrix[i][j] += w
        matrix[j][j] -= w
        matrix[j][i] += w
    for r in skeleton.rays:
        rhs[index[r.base]] -= divisor[r.puncture]
    harmonic_rows = [row[:] for row in matrix], rhs[:]
    b = index[skeleton.base_vertex]
    matrix[b] = [Fraction(1) if k == b else Fraction(0) for k in range(n)]
    rhs[b] = Fraction(0)
    values = _linalg.solve(matrix, rhs)
    if values is None:
        raise InputError("potential system is singular; is the skeleton connected?")

    rows, targets = harmonic_rows
    for row, target in zip(rows, targets):
        assert sum(c * x for c, x in zip(row, values)) == target, "harmonicity violated"

    slopes = []
    for e in skeleton.edges:
        s = (values[index[e.v]] - values[index[e.u]]) / e.length
        if s.denominator != 1:
            if skeleton.betti_number() > 0:
                raise NonPrincipalOnTate(
                    f"slope {s} on edge {e.id} is not an integer: divisor class is nontrivial"
                )
            raise AssertionError(f"non-integral slope {s} on a tree")
        slopes.append((e.id, int(s)))
    ray_slopes = tuple((p, divisor[p]) for p in skeleton.punctures)
    return PLFunction(skeleton, tuple(slopes), ray_slopes, Fraction(0))


def evaluate(pl: PLFunction, vertex: str) -> Fraction:
    vals = pl.values()
    if vertex not in vals:
        raise InputError(f"unknown vertex {vertex!r}")
    return vals[vertex]


def change_of_slope(pl: PLFunction, vertex: str, include_rays: bool = True) -> int:
    """Sum of outgoing slopes at ``vertex``.

    With rays included this is the harmonicity defect (zero for a solved
    potential).  Over edge directions only it equals the number of poles minus
    the number of zeros retracting to ``vertex``.
    """
    return sum(
        s for label, s in pl.outgoing(vertex) if include_rays or not label.startswith("ray:")
    )


def gauss_value(skeleton: Skeleton, divisor: Divisor, vertex: str, leading_valuation=0) -> Fraction:
    """``val(f)`` at a branch point of a line skeleton, straight from the factorization.

    For ``f = c * prod (u - a_i)^{n_i}`` and the Gauss point of the ball of
    radius ``|t|^d`` around ``a``, this is
    ``val(c) + sum n_i * min(val(a - a_i), d)`` over the finite zeros and poles.
    """
    if skeleton.kind != "p1" or not skeleton.points:
        raise InputError("Gauss-point values need a line skeleton with puncture coordinates")
    v = skeleton.vertex(vertex)
    pts = dict(skeleton.points)
    center = pts[v.center]
    total = rat(leading_valuation)
    for pid, n in divisor.orders:
        if pid == INFINITY_ID:
            continue
        d = val(sub(center, pts[pid])) if pid != v.center else INF
        total += n * min(d, v.depth)
    return total


def solve_rational_function(skeleton: Skeleton, divisor: Divisor | Mapping[str, int], leading_valuation=0) -> PLFunction:
    """Potential of ``f = c * prod (u - a_i)^{n_i}`` with ``val(c)`` given, no translation ambiguity."""
    if not isinstance(divisor, Divisor):
        divisor = Divisor(divisor)
    pl = solve_slope(skeleton, divisor)
    return pl.with_base_value(gauss_value(skeleton, divisor, skeleton.base_vertex, leading_valuation))
