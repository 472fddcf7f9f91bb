import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropskel import (
    TropicalPolynomial,
    check_balancing,
    corner_locus,
    dual_subdivision,
    newton_polygon_from_curve,
    newton_polygon_of,
    verify_duality,
)
from tropskel.errors import InputError, PrecisionLoss

import _gen

seeds = st.integers(0, 2**32)
F = Fraction


def test_parse_tracks_valuations():
    tp = TropicalPolynomial.from_string("x^2*y + (1/t)*x*y - 3*p^2*y + 7")
    assert dict(tp.terms) == {(2, 1): 0, (1, 1): -1, (0, 1): 2, (0, 0): 0}


def test_cancelling_terms_drop_out():
    tp = TropicalPolynomial.from_string("(y-1)^2 - y^2 + 2*y + x")
    assert sorted(tp.exponents) == [(0, 0), (1, 0)]


def test_dehomogenize():
    tp = TropicalPolynomial.from_string("x*y*z + x^3 + t*z^3", dehomogenize=True)
    assert dict(tp.terms) == {(1, 1): 0, (3, 0): 0, (0, 0): 1}


def test_pure_error_term_is_rejected():
    with pytest.raises(PrecisionLoss):
        TropicalPolynomial.from_string("O(t)*x + y + 1")


def test_collinear_support_is_rejected():
    with pytest.raises(InputError):
        dual_subdivision(TropicalPolynomial.from_string("1 + x + x^2"))


def test_json_round_trip():
    tp = TropicalPolynomial.from_string("x + (1/t)*y + t^(2/3)")
    assert TropicalPolynomial.from_dict(json.loads(json.dumps(tp.to_dict()))) == tp


def test_tropical_line():
    tc = corner_locus(TropicalPolynomial.from_string("x + y + 1"))
    assert tc.describe() == [
        "ray (0/1,0/1) dir (-1,-1) mult 1",
        "ray (0/1,0/1) dir (0,1) mult 1",
        "ray (0/1,0/1) dir (1,0) mult 1",
    ]


def test_double_line_has_multiplicity_two():
    tc = corner_locus(TropicalPolynomial.from_string("x^2 + 1 + y^2"))
    assert [r.mult for r in tc.rays] == [2, 2, 2]


def test_regular_subdivision_of_a_square():
    tp = TropicalPolynomial.from_mapping({(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 1})
    ds = dual_subdivision(tp)
    assert len(ds.cells) == 2 and ds.is_unimodular()
    tc = corner_locus(tp, ds)
    assert [(tc.vertices[s.u], tc.vertices[s.v]) for s in tc.segments] == [((F(-1), F(-1)), (F(0), F(0)))]


def _segment_points(tc):
    for s in tc.segments:
        p, q = tc.vertices[s.u], tc.vertices[s.v]
        yield tuple((a + b) / 2 for a, b in zip(p, q))
    for r in tc.rays:
        yield tuple(b + d for b, d in zip(tc.vertices[r.base], r.direction))


def _on_complex(tc, w):
    def along(base, d, bounded):
        # w = base + s*d with s in [0, 1] (bounded) or s >= 0
        dx, dy = w[0] - base[0], w[1] - base[1]
        if dx * d[1] - dy * d[0]:
            return False
        s = (dx * d[0] + dy * d[1]) / (d[0] ** 2 + d[1] ** 2)
        return s >= 0 and (not bounded or s <= 1)

    for s in tc.segments:
        p, q = tc.vertices[s.u], tc.vertices[s.v]
        if along(p, (q[0] - p[0], q[1] - p[1]), True):
            return True
    return any(along(tc.vertices[r.base], r.direction, False) for r in tc.rays) or w in tc.vertices


@given(seeds)
def test_corner_locus_is_where_the_minimum_ties(seed):
    """Oracle: on every cell the minimum is attained at least twice; at random off-curve points once."""
    rng = _gen.rng_from(seed)
    tp = _gen.random_polynomial(rng)
    tc = corner_locus(tp)
    for w in list(_segment_points(tc)) + list(tc.vertices):
        assert len(tp.argmin(w)) >= 2
    points = [(F(rng.randint(-40, 40), 4), F(rng.randint(-40, 40), 4)) for _ in range(40)]
    for w in points:
        assert (len(tp.argmin(w)) >= 2) == _on_complex(tc, w)


@given(seeds)
def test_duality_balancing_and_polygon(seed):
    rng = _gen.rng_from(seed)
    tp = _gen.random_polynomial(rng)
    ds = dual_subdivision(tp)
    tc = corner_locus(tp, ds)
    assert verify_duality(tp, ds).passed
    assert check_balancing(tc).passed
    assert newton_polygon_from_curve(tc) == newton_polygon_of(tp.exponents)


@given(seeds)
def test_interior_edge_multiplicity_is_lattice_length(seed):
    rng = _gen.rng_from(seed)
    tp = _gen.random_polynomial(rng)
    ds = dual_subdivision(tp)
    tc = corner_locus(tp, ds)
    total = sum(s.mult for s in tc.segments) + sum(r.mult for r in tc.rays)
    from math import gcd

    dual = [gcd(p[0] - q[0], p[1] - q[1]) for *_, p, q in ds.interior_edges]
    dual += [gcd(p[0] - q[0], p[1] - q[1]) for _, p, q in ds.boundary_edges]
    assert total == sum(dual)
