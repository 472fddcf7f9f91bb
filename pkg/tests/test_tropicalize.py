import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropskel import (
    TropicalComplex,
    betti_one,
    bridgeless_core,
    build_p1_skeleton,
    check_balancing,
    cycle_length,
    solve_rational_function,
    solve_slope,
    subdivide,
    trop_map,
)
from tropskel.errors import DisconnectedComplex, InputError

import _gen

seeds = st.integers(0, 2**32)
F = Fraction


def random_image(rng, n_coords=2):
    if rng.random() < 0.5:
        sk = _gen.random_tree(rng)
        coords = [solve_slope(sk, _gen.random_divisor(rng, sk.punctures)) for _ in range(n_coords)]
    else:
        sk, divs = _gen.random_tate(rng, tuple("abc"[:n_coords]))
        coords = [solve_slope(sk, d) for d in divs]
    return sk, coords


def test_ray_over_segment_is_split_and_summed():
    tc = TropicalComplex.from_pieces(2, [((0, 0), (2, 0), 1)], [((0, 0), (1, 0), 1), ((0, 0), (0, 1), 1)])
    assert tc.describe() == [
        "segment (0/1,0/1)--(2/1,0/1) mult 2",
        "ray (0/1,0/1) dir (0,1) mult 1",
        "ray (2/1,0/1) dir (1,0) mult 1",
    ]


def test_merge_joins_equal_collinear_pieces_only():
    equal = TropicalComplex.from_pieces(
        2, [((0, 0), (2, 0), 2)], [((2, 0), (1, 0), 2), ((0, 0), (0, -1), 2), ((0, 0), (-1, 1), 2)]
    )
    assert equal.merged().describe() == [
        "ray (0/1,0/1) dir (-1,1) mult 2",
        "ray (0/1,0/1) dir (0,-1) mult 2",
        "ray (0/1,0/1) dir (1,0) mult 2",
    ]
    unequal = TropicalComplex.from_pieces(2, [((0, 0), (2, 0), 2)], [((2, 0), (1, 0), 1)])
    assert unequal.merged().weighted_key() == unequal.weighted_key()


def test_transverse_crossing_is_not_a_vertex():
    tc = TropicalComplex.from_pieces(2, [((-1, 0), (1, 0), 1), ((0, -1), (0, 1), 1)])
    assert (F(0), F(0)) not in tc.vertices
    assert len(tc.segments) == 2


def test_json_round_trip_and_schema_check():
    tc = TropicalComplex.from_pieces(2, [((0, 0), (F(1, 3), 1), 2)], [((0, 0), (-1, 0), 1)])
    doc = json.loads(json.dumps(tc.to_dict()))
    assert doc["vertices"][1] == ["1/3", "1/1"]
    assert TropicalComplex.from_dict(doc) == tc
    with pytest.raises(InputError):
        TropicalComplex.from_dict({**doc, "schema": "tropcomplex.v0"})


def test_example_line_image_both_presentations():
    sk = build_p1_skeleton(["0", "1", "p"])
    fx = solve_rational_function(sk, {"0": 1, "t": 1, "inf": -2})
    fy = solve_rational_function(sk, {"1": 1, "inf": -1})
    tc, report = trop_map(sk, [fx, fy])
    assert report.m_rel("e0") == 2
    assert tc.describe() == [
        "segment (0/1,0/1)--(2/1,0/1) mult 2",
        "ray (0/1,0/1) dir (-2,-1) mult 1",
        "ray (0/1,0/1) dir (0,1) mult 1",
        "ray (2/1,0/1) dir (1,0) mult 2",
    ]
    merged, _ = trop_map(sk, [fx, fy], merge_collinear=True)
    assert merged.describe() == [
        "ray (0/1,0/1) dir (-2,-1) mult 1",
        "ray (0/1,0/1) dir (0,1) mult 1",
        "ray (0/1,0/1) dir (1,0) mult 2",
    ]


@given(seeds, st.integers(1, 3))
def test_expansion_factor_is_slope_content(seed, n):
    rng = _gen.rng_from(seed)
    sk, coords = random_image(rng, n)
    tc, report = trop_map(sk, coords)
    for e in sk.edges:
        assert report.m_rel(e.id) == math.gcd(*(f.slope(e.id) for f in coords))
    images = {v: tuple(f.values()[v] for f in coords) for v in sk.vertex_ids}
    for e in sk.edges:
        if e.u != e.v:
            delta = [b - a for a, b in zip(images[e.u], images[e.v])]
            assert all(d == e.length * f.slope(e.id) for d, f in zip(delta, coords))


@given(seeds, st.integers(1, 3))
def test_images_are_balanced(seed, n):
    rng = _gen.rng_from(seed)
    sk, coords = random_image(rng, n)
    tc, _ = trop_map(sk, coords)
    assert check_balancing(tc).passed
    assert check_balancing(tc.merged()).passed


@given(seeds, st.fractions(min_value=0, max_value=1).filter(lambda q: 0 < q < 1))
def test_image_independent_of_subdivision(seed, where):
    rng = _gen.rng_from(seed)
    sk, coords = random_image(rng)
    if not sk.edges:
        return
    edge = rng.choice(sk.edges)
    finer = subdivide(sk, edge.id, edge.length * where)
    again = [solve_slope(finer, dict(f.ray_slopes)) for f in coords]
    a, _ = trop_map(sk, coords)
    b, _ = trop_map(finer, again)
    assert a.merged().weighted_key() == b.merged().weighted_key()


def test_betti_and_core():
    square = [((0, 0), (1, 0), 1), ((1, 0), (1, 1), 1), ((1, 1), (0, 1), 1), ((0, 1), (0, 0), 1)]
    tail = [((1, 1), (2, 2), 1)]
    tc = TropicalComplex.from_pieces(2, square + tail)
    assert betti_one(tc) == 1
    assert len(bridgeless_core(tc)) == 4
    assert cycle_length(tc) == 4
    assert betti_one(TropicalComplex.empty(2)) == 0
    apart = TropicalComplex.from_pieces(2, [((0, 0), (1, 0), 1), ((5, 5), (6, 5), 1)])
    with pytest.raises(DisconnectedComplex):
        betti_one(apart)


def test_unbalanced_vertex_reported():
    tc = TropicalComplex.from_pieces(2, [], [((0, 0), (1, 0), 1), ((0, 0), (0, 1), 1)])
    report = check_balancing(tc)
    assert not report.passed
    assert report.failures()[0][2] == (1, 1)
