import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropskel import Skeleton, build_p1_skeleton, build_tate_skeleton, subdivide
from tropskel.errors import InputError, PositionOutOfRange, TooFewPunctures
from tropskel.exactnum import INF, pairwise_valuations, parse_puiseux

import _gen


def test_example_line_skeleton():
    sk = build_p1_skeleton(["0", "1", "p"])
    assert sk.kind == "p1"
    assert [e.length for e in sk.edges] == [Fraction(1)]
    assert sorted(sk.punctures) == ["0", "1", "inf", "t"]
    # 0 and t sit on the far branch point, 1 and inf on the Gauss point
    assert sk.ray_base("0") == sk.ray_base("t") != sk.ray_base("1") == sk.ray_base("inf")


def test_three_points_give_a_single_vertex():
    sk = build_p1_skeleton(["0", "1"])
    assert len(sk.vertices) == 1 and not sk.edges


def test_too_few_punctures():
    with pytest.raises(TooFewPunctures):
        build_p1_skeleton(["0"], include_infinity=False)


def test_tate_skeleton_orders_positions():
    sk = build_tate_skeleton(4, [("b", 3), ("a", 1), ("c", 5)])
    assert [v.position for v in sk.vertices] == [1, 3]
    assert [(e.u, e.v, e.length) for e in sk.edges] == [("v0", "v1", 2), ("v1", "v0", 2)]
    assert sk.ray_base("c") == "v0"
    assert sk.betti_number() == 1


def test_tate_single_position_is_a_loop():
    sk = build_tate_skeleton(Fraction(5, 2), [("x", 0), ("y", 0)])
    assert [(e.u, e.v, e.length) for e in sk.edges] == [("v0", "v0", Fraction(5, 2))]


def test_tate_rejects_nonpositive_length():
    with pytest.raises(InputError):
        build_tate_skeleton(0, [("x", 0)])


@given(st.integers(0, 2**32))
def test_branch_depths_match_meet_valuations(seed):
    rng = _gen.rng_from(seed)
    """Two finite punctures meet at depth val(a - b): distance between their rays' bases."""
    sk = _gen.random_tree(rng)
    points = [p for p in sk.punctures if p != "inf"]
    if len(points) < 2:
        return
    matrix = pairwise_valuations([sk.point(p) for p in points])
    depth = {v.id: v.depth for v in sk.vertices}
    for i, a in enumerate(points):
        for j, b in enumerate(points):
            if i < j:
                da = sk.distances_from(sk.ray_base(a))
                # the meet vertex lies on the path; its depth is the valuation of the difference
                path_depths = [depth[v] for v in da if da[v] + sk.distances_from(v)[sk.ray_base(b)] == da[sk.ray_base(b)]]
                assert min(path_depths) == matrix[i][j]


@given(st.integers(0, 2**32))
def test_edge_lengths_are_depth_gaps(seed):
    rng = _gen.rng_from(seed)
    sk = _gen.random_tree(rng)
    for e in sk.edges:
        assert e.length == abs(sk.vertex(e.u).depth - sk.vertex(e.v).depth) > 0


@given(st.integers(0, 2**32))
def test_json_round_trip(seed):
    rng = _gen.rng_from(seed)
    sk = _gen.random_tree(rng) if rng.random() < 0.5 else _gen.random_tate(rng)[0]
    again = Skeleton.from_dict(json.loads(json.dumps(sk.to_dict())))
    assert again.to_dict() == sk.to_dict()


def test_subdivide_preserves_length():
    sk = build_tate_skeleton(6, [("a", 0), ("b", 2)])
    sub = subdivide(sk, "e1", 1)
    assert sub.total_length() == sk.total_length()
    assert sub.betti_number() == 1
    assert sub.vertex("v2").position == 3
    with pytest.raises(PositionOutOfRange):
        subdivide(sk, "e0", 2)


def test_distinct_depths_in_line_skeleton():
    sk = build_p1_skeleton(["0", "p", "p^3", "1"])
    assert sorted(v.depth for v in sk.vertices) == [0, 1, 3]
    assert all(v.depth is not INF for v in sk.vertices)
    assert parse_puiseux("p^3") == sk.point("t^3")
