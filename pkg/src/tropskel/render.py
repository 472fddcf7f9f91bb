"""Deterministic SVG drawings of plane tropical curves and skeleta.

Coordinates stay rational until the very last step, where they become
floats for matplotlib.  A fixed hash salt and a blank date make the output
byte-stable.
"""

from __future__ import annotations

import io
import math
from collections import deque
from fractions import Fraction
from pathlib import Path

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from .errors import UnsupportedDimension
from .skeleton import Skeleton
from .tropicalize import TropicalComplex

RC = {"svg.hashsalt": "tropskel", "svg.fonttype": "none", "font.size": 9, "path.simplify": False}
SIZE = (5.0, 5.0)
INK = "#222222"
ACCENT = "#b03a2e"
RAY = "#1f618d"


def short(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _new_figure() -> tuple[Figure, object]:
    fig = Figure(figsize=SIZE)
    FigureCanvasSVG(fig)
    ax = fig.add_axes((0.04, 0.04, 0.92, 0.92))
    ax.set_aspect("equal")
    ax.set_axis_off()
    return fig, ax


def _to_svg(fig: Figure) -> str:
    buf = io.StringIO()
    with matplotlib.rc_context(RC):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def _bounds(points, pad):
    xs = [float(p[0]) for p in points] or [0.0]
    ys = [float(p[1]) for p in points] or [0.0]
    return min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad


def complex_figure(tc: TropicalComplex) -> Figure:
    if tc.dim != 2:
        raise UnsupportedDimension(f"can only draw plane complexes, got dimension {tc.dim}")
    with matplotlib.rc_context(RC):
        fig, ax = _new_figure()
        if not tc.vertices:
            ax.set_xlim(-1, 1)
            ax.set_ylim(-1, 1)
            return fig
        x0, x1, y0, y1 = _bounds(tc.vertices, 0)
        reach = max(1.0, 0.4 * max(x1 - x0, y1 - y0))
        ends = []
        for r in tc.rays:
            bx, by = (float(c) for c in tc.vertices[r.base])
            dx, dy = r.direction
            norm = math.hypot(dx, dy)
            ex, ey = bx + reach * dx / norm, by + reach * dy / norm
            ends.append((ex, ey))
            ax.plot([bx, ex], [by, ey], color=RAY, linewidth=0.6 + 0.8 * r.mult, solid_capstyle="butt")
            if r.mult > 1:
                ax.annotate(f"m={r.mult}", (ex, ey), textcoords="offset points", xytext=(3, 3), color=RAY)
        for k, s in enumerate(tc.segments):
            (ax_, ay), (bx, by) = ((float(c) for c in tc.vertices[i]) for i in (s.u, s.v))
            ax.plot([ax_, bx], [ay, by], color=INK, linewidth=0.6 + 0.8 * s.mult)
            label = short(tc.lattice_length(k)) + (f" (m={s.mult})" if s.mult > 1 else "")
            ax.annotate(label, ((ax_ + bx) / 2, (ay + by) / 2), textcoords="offset points",
                        xytext=(4, 4), color=ACCENT)
        xs = [float(p[0]) for p in tc.vertices]
        ys = [float(p[1]) for p in tc.vertices]
        ax.scatter(xs, ys, s=14, color=INK, zorder=3)
        lo_x = min(xs + [e[0] for e in ends])
        hi_x = max(xs + [e[0] for e in ends])
        lo_y = min(ys + [e[1] for e in ends])
        hi_y = max(ys + [e[1] for e in ends])
        pad = 0.08 * max(hi_x - lo_x, hi_y - lo_y, 1.0)
        ax.set_xlim(lo_x - pad, hi_x + pad)
        ax.set_ylim(lo_y - pad, hi_y + pad)
    return fig


def _tree_layout(sk: Skeleton) -> dict[str, tuple[float, float]]:
    """Layered layout: depth by BFS from the base vertex, leaves spread left to right."""
    adj = sk.adjacency()
    parent = {sk.base_vertex: None}
    order = [sk.base_vertex]
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for _, y, _ in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
                queue.append(y)
    children = {v: [] for v in order}
    for v in order[1:]:
        children[parent[v]].append(v)
    level = {sk.base_vertex: 0}
    for v in order[1:]:
        level[v] = level[parent[v]] + 1
    slot: dict[str, float] = {}
    counter = [0.0]

    def place(v):
        if not children[v]:
            width = max(1, len(sk.rays_at(v)))
            slot[v] = counter[0] + (width - 1) / 2
            counter[0] += width
            return
        for c in children[v]:
            place(c)
        slot[v] = sum(slot[c] for c in children[v]) / len(children[v])

    place(sk.base_vertex)
    return {v: (slot[v], -1.5 * level[v]) for v in order}


def _circle_layout(sk: Skeleton) -> dict[str, tuple[float, float]]:
    pos = {}
    for v in sk.vertices:
        angle = 2 * math.pi * float(Fraction(v.position or 0) / sk.loop_length)
        pos[v.id] = (math.cos(angle), math.sin(angle))
    return pos


def skeleton_figure(sk: Skeleton) -> Figure:
    with matplotlib.rc_context(RC):
        fig, ax = _new_figure()
        circle = sk.kind == "tate"
        pos = _circle_layout(sk) if circle else _tree_layout(sk)
        for e in sk.edges:
            (x0, y0), (x1, y1) = pos[e.u], pos[e.v]
            if circle:
                a0 = math.atan2(y0, x0)
                span = 2 * math.pi * float(e.length / sk.loop_length)
                ts = [a0 + span * i / 48 for i in range(49)]
                ax.plot([math.cos(t) for t in ts], [math.sin(t) for t in ts], color=INK, linewidth=1.4)
                mid = a0 + span / 2
                ax.annotate(short(e.length), (1.08 * math.cos(mid), 1.08 * math.sin(mid)),
                            ha="center", va="center", color=ACCENT)
            else:
                ax.plot([x0, x1], [y0, y1], color=INK, linewidth=1.4)
                ax.annotate(short(e.length), ((x0 + x1) / 2, (y0 + y1) / 2), textcoords="offset points",
                            xytext=(4, 0), color=ACCENT)
        for v in sk.vertex_ids:
            rays = sk.rays_at(v)
            x, y = pos[v]
            for i, r in enumerate(rays):
                if circle:
                    base = math.atan2(y, x)
                    ang = base + 0.35 * (i - (len(rays) - 1) / 2)
                    ex, ey = x + 0.45 * math.cos(ang), y + 0.45 * math.sin(ang)
                elif v == sk.base_vertex and r.puncture == "inf":
                    ex, ey = x, y + 0.9
                else:
                    ex, ey = x + 0.5 * (i - (len(rays) - 1) / 2), y - 0.9
                ax.annotate("", (ex, ey), (x, y), arrowprops={"arrowstyle": "->", "color": RAY, "lw": 0.9})
                ax.annotate(r.puncture, (ex, ey), textcoords="offset points", xytext=(0, -9 if ey < y else 3),
                            ha="center", color=RAY)
            ax.scatter([x], [y], s=16, color=INK, zorder=3)
            ax.annotate(v, (x, y), textcoords="offset points", xytext=(-10, 4), color=INK)
        xs = [p[0] for p in pos.values()]
        ys = [p[1] for p in pos.values()]
        ax.set_xlim(min(xs) - 1.0, max(xs) + 1.0)
        ax.set_ylim(min(ys) - 1.2, max(ys) + 1.2)
    return fig


def render_svg(obj: TropicalComplex | Skeleton) -> str:
    if isinstance(obj, Skeleton):
        return _to_svg(skeleton_figure(obj))
    return _to_svg(complex_figure(obj))


def write_svg(obj: TropicalComplex | Skeleton, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_svg(obj), encoding="utf-8")
    return path
