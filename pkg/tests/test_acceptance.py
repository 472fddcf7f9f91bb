"""Acceptance criteria 1-9.  Each test prints one ``criterion N: PASS|FAIL`` line.

Run directly with ``python tests/test_acceptance.py`` or through pytest.
"""

from __future__ import annotations

import contextlib
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from tropskel import (
    CERTIFIED,
    NOT_CERTIFIED,
    Divisor,
    LatticeMap,
    TropicalPolynomial,
    betti_one,
    bridgeless_core,
    build_p1_skeleton,
    build_tate_skeleton,
    certify_faithful,
    change_of_slope,
    check_balancing,
    corner_locus,
    crosscheck_parametric,
    cycle_length,
    dual_subdivision,
    kmm_check,
    newton_polygon_from_curve,
    newton_polygon_of,
    pushforward,
    solve_rational_function,
    solve_slope,
    trop_map,
    verify_duality,
)

import _gen

F = Fraction
ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number: int, title: str):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {title}")

    return run


def ray_summary(tc):
    return sorted((tc.vertices[r.base], r.direction, r.mult) for r in tc.rays)


def segment_summary(tc):
    return sorted(
        tuple(sorted((tc.vertices[s.u], tc.vertices[s.v]))) + (s.mult, tc.lattice_length(k))
        for k, s in enumerate(tc.segments)
    )


def test_criterion_1_example_line_pipeline(criterion):
    with criterion(1, "line through {0,1,p,inf}: rays, expansion 2, implicit = parametric"):
        sk = build_p1_skeleton(["0", "1", "p"])
        x = solve_rational_function(sk, {"0": 1, "t": 1, "inf": -2})
        y = solve_rational_function(sk, {"1": 1, "inf": -1})
        tc, report = trop_map(sk, [x, y], merge_collinear=True)
        assert sorted((r.direction, r.mult) for r in tc.rays) == [((-2, -1), 1), ((0, 1), 1), ((1, 0), 2)]
        assert [e.length for e in sk.edges] == [1]
        assert report.m_rel(sk.edges[0].id) == 2
        implicit = corner_locus(TropicalPolynomial.from_string("y^2 + (2-p)*y - x - (p-1)"))
        assert crosscheck_parametric(implicit, tc).equal
        assert implicit.merged() == tc


def test_criterion_2_cartwright_curve(criterion):
    with criterion(2, "Cartwright curve: two vertices, segment mult 1, rays (1,1,2,3), balanced"):
        qs = ["t^(1/3)", "2*t^(1/3)", "3*t^(1/3)"]
        ps = ["t^(1/2)", "2*t^(1/2)"]
        sk = build_p1_skeleton(qs + ps + ["-1"])
        x = solve_rational_function(sk, {**{q: 1 for q in qs}, "inf": -3}, leading_valuation=-1)
        y = solve_rational_function(sk, {**{p: 1 for p in ps}, "inf": -2}, leading_valuation=-1)
        z = solve_rational_function(sk, {"-1": 1, "inf": -1})
        tc, _ = trop_map(sk, [x, y, z], merge_collinear=True)
        assert sorted(tc.vertices) == [(F(-1), F(-1), F(0)), (F(0), F(-1, 3), F(0))]
        assert [s.mult for s in tc.segments] == [1]
        assert sorted(r.mult for r in tc.rays) == [1, 1, 2, 3]
        assert [res for _, _, res in check_balancing(tc).residuals] == [(0, 0, 0), (0, 0, 0)]


def test_criterion_3_tate_folding(criterion):
    with criterion(3, "y^2 = x^3 + x^2 + t^4: circle of length 4 onto a segment of length 2, mult 2"):
        sk = build_tate_skeleton(4, [("inf", 0), ("P3", 0), ("Q1", 2), ("Q2", 2), ("P1", 2), ("P2", 2)])
        x = solve_slope(sk, {"Q1": 1, "Q2": 1, "inf": -2})
        y = solve_slope(sk, {"P1": 1, "P2": 1, "P3": 1, "inf": -3})
        tc, _ = trop_map(sk, [x, y])
        assert sk.total_length() == 4
        assert [(s.mult, tc.lattice_length(k)) for k, s in enumerate(tc.segments)] == [(2, 2)]
        assert sorted(r.mult for r in tc.rays) == [1, 1, 2, 2]


_ell_rng = random.Random(4)
GOOD_ELLS = [F(1), F(3), F(12), F(7, 2), F(1, 5), F(22, 7)] + [
    F(_ell_rng.randint(1, 60), _ell_rng.randint(1, 9)) for _ in range(6)
]


def test_criterion_4_good_embedding(criterion):
    with criterion(4, "good genus-1 embedding: triangle of sides l/3, faithful, kmm at -l"):
        for ell in GOOD_ELLS:
            sk = build_tate_skeleton(ell, [("0", 0), ("alpha", ell / 3), ("beta", 2 * ell / 3)])
            f = solve_slope(sk, {"alpha": 2, "beta": -1, "0": -1})
            g = solve_slope(sk, {"beta": 2, "alpha": -1, "0": -1})
            tc, _ = trop_map(sk, [f, g])
            assert [(s.mult, tc.lattice_length(k)) for k, s in enumerate(tc.segments)] == [(1, ell / 3)] * 3
            assert all(r.mult == 1 for r in tc.rays)
            assert certify_faithful(tc, 1).verdict == CERTIFIED
            assert kmm_check(tc, -ell).verdict == CERTIFIED


BAD_DIVISORS = {
    "x'": {"P": 2, "0": -2},
    "y'": {"Q": 3, "0": -3},
    "f1": {"alpha": 1, "beta": 1, "gamma": -1, "0": -1},
    "f2": {"beta": 3, "gamma": -2, "0": -1},
    "f3": {"beta": 3, "gamma": 1, "alpha": -1, "0": -3},
    "f4": {"beta": 7, "alpha": -2, "gamma": -4, "0": -1},
}
BAD_POSITIONS = {"0": 0, "P": 0, "Q": 0, "alpha": F(1, 4), "beta": F(1, 2), "gamma": F(3, 4)}


def bad_embedding(ell, names):
    support = [p for p in BAD_POSITIONS if any(p in BAD_DIVISORS[n] for n in names)]
    sk = build_tate_skeleton(ell, [(p, BAD_POSITIONS[p] * ell) for p in support])
    return sk, trop_map(sk, [solve_slope(sk, BAD_DIVISORS[n]) for n in names], merge_collinear=True)


def test_criterion_5_bad_embeddings(criterion):
    with criterion(5, "bad genus-1 embeddings: cycle images 0, 3l/4, 5l/4, l and arc expansions"):
        for ell in [F(8), F(1), F(5, 3)]:
            sk, (tc, rep) = bad_embedding(ell, ("x'", "y'"))
            assert betti_one(tc) == 0 and not tc.segments
            assert [rep.m_rel(e.id) for e in sk.edges] == [0]

            sk, (tc, rep) = bad_embedding(ell, ("f1", "f2"))
            assert cycle_length(tc) == 3 * ell / 4
            assert [rep.m_rel(e.id) for e in sk.edges] == [1, 1, 1, 0]

            sk, (tc, rep) = bad_embedding(ell, ("x'", "y'", "f2", "f3"))
            assert cycle_length(tc) == 5 * ell / 4
            assert [rep.m_rel(e.id) for e in sk.edges] == [1, 1, 1, 2]

            sk, (tc, rep) = bad_embedding(ell, ("x'", "y'", "f2", "f4"))
            assert cycle_length(tc) == ell
            sides = sorted((tc.lattice_length(k), tc.segments[k].mult) for k in bridgeless_core(tc))
            assert sides == [(ell / 4, 1), (ell / 4, 1), (ell / 2, 2)]
            assert [rep.m_rel(e.id) for e in sk.edges] == [1, 1, 2, 0]


def test_criterion_6_newton_examples(criterion):
    with criterion(6, "Newton examples: square of side 2 with kmm at -8; triangle with mult-2 cells at origin"):
        square = corner_locus(TropicalPolynomial.from_string("x^2*y + x*y^2 + (1/t)*x*y + x + y"))
        assert [(s.mult, square.lattice_length(k)) for k, s in enumerate(square.segments)] == [(1, 2)] * 4
        assert cycle_length(square) == 8
        assert kmm_check(square, -8).verdict == CERTIFIED

        tri = corner_locus(TropicalPolynomial.from_string("x^3*y - x^2*y^2 - 2*x*y^3 - 3*x^2*y + 2*x*y - p"))
        o, a, b = (F(0), F(0)), (F(0), F(1)), (F(1), F(0))
        assert segment_summary(tri) == [(o, a, 2, 1), (o, b, 2, 1), (a, b, 1, 1)]
        assert ray_summary(tri) == [(o, (-1, -1), 2), (a, (-1, 3), 1), (b, (3, -1), 1)]


def test_criterion_7_negative_control(criterion):
    with criterion(7, "faithful counterexample: multiplicities all 1 yet NOT_CERTIFIED for genus 1"):
        tc = corner_locus(TropicalPolynomial.from_string("(y-1)^2 - (x-1)^2*(y+1) - t*x*y"))
        assert all(s.mult == 1 for s in tc.segments) and all(r.mult == 1 for r in tc.rays)
        assert certify_faithful(tc, 1).verdict == NOT_CERTIFIED


def _property_trees(rng) -> None:
    for _ in range(200):
        sk = _gen.random_tree(rng)
        div = _gen.random_divisor(rng, sk.punctures)
        assert dict(solve_slope(sk, div).slopes) == _gen.far_side_slopes(sk, div)


def _property_tate(rng) -> None:
    for _ in range(100):
        sk, (d1, d2) = _gen.random_tate(rng, ("a", "b"))
        f, g = solve_slope(sk, d1), solve_slope(sk, d2)
        h = solve_slope(sk, Divisor(d1) + Divisor(d2))
        for pl in (f, g, h):
            assert all(change_of_slope(pl, v) == 0 for v in sk.vertex_ids)
            assert sum(pl.slope(e.id) * e.length for e in sk.edges) == 0
        assert all(h.slope(e.id) == f.slope(e.id) + g.slope(e.id) for e in sk.edges)


def _property_polynomials(rng) -> None:
    for _ in range(100):
        tp = _gen.random_polynomial(rng)
        ds = dual_subdivision(tp)
        tc = corner_locus(tp, ds)
        assert check_balancing(tc).passed
        assert verify_duality(tp, ds).passed
        assert newton_polygon_from_curve(tc) == newton_polygon_of(tp.exponents)


def _property_pushforward(rng) -> None:
    for k in range(50):
        if k % 2:
            tc = corner_locus(_gen.random_polynomial(rng))
        else:
            sk, divs = _gen.random_tate(rng, ("a", "b"))
            tc, _ = trop_map(sk, [solve_slope(sk, d) for d in divs])
        lmap = LatticeMap(_gen.random_matrix(rng, rng.randint(1, 3), 2))
        assert check_balancing(pushforward(tc, lmap)).passed


def test_criterion_8_property_suites(criterion):
    with criterion(8, "oracle suites: 200 trees, 100 circles, 100 polynomials, 50 pushforwards"):
        rng = random.Random(20260801)
        _property_trees(rng)
        _property_tate(rng)
        _property_polynomials(rng)
        _property_pushforward(rng)


def test_criterion_9_scenario_registry(criterion, tmp_path):
    with criterion(9, "scenario --all: at least 13 scenarios, exit 0, under 10 s"):
        env = {**os.environ, "PYTHONPATH": str(ROOT / "src"), "TROPSKEL_OUT": str(tmp_path)}
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "tropskel", "scenario", "--all"], capture_output=True, text=True, env=env
        )
        elapsed = time.perf_counter() - start
        assert proc.returncode == 0, proc.stdout + proc.stderr
        rows = [line.split("\t") for line in proc.stdout.splitlines()[1:] if not line.startswith("#")]
        assert len({r[0] for r in rows}) >= 13
        assert all(r[2] == "PASS" for r in rows)
        assert elapsed < 10


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
