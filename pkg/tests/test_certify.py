from fractions import Fraction

import pytest

from tropskel import (
    CERTIFIED,
    NOT_CERTIFIED,
    REFUTED,
    Certificate,
    TropicalComplex,
    certify_faithful,
    kmm_check,
    vertex_mult_one,
    well_spaced_check,
)
from tropskel.errors import CycleNotInHyperplane, InputError, MultipleCycles, NoCycle

F = Fraction

# honeycomb triangle: each corner sends two rays out
TRIANGLE = [((0, 0), (3, 0), 1), ((3, 0), (0, 3), 1), ((0, 3), (0, 0), 1)]
TRIANGLE_RAYS = [((0, 0), (-1, -1), 1), ((3, 0), (2, -1), 1), ((0, 3), (-1, 2), 1)]


def triangle(mult=1):
    segs = [(p, q, mult) for p, q, _ in TRIANGLE]
    rays = [(b, tuple(mult * x for x in d), 1) for b, d, _ in TRIANGLE_RAYS]
    return TropicalComplex.from_pieces(2, segs, rays)


def test_triangle_is_faithful_and_passes_kmm():
    tc = triangle()
    assert certify_faithful(tc, 1).verdict == CERTIFIED
    assert kmm_check(tc, -9).verdict == CERTIFIED
    refuted = kmm_check(tc, -8)
    assert (refuted.verdict, refuted.rule) == (REFUTED, "cycle-length-differs")
    assert refuted.witness["cycle_length"] == "9/1"


def test_genus_mismatch():
    cert = certify_faithful(triangle(), 2)
    assert (cert.verdict, cert.rule) == (NOT_CERTIFIED, "no-bridgeless-subgraph-of-genus")


def test_tree_of_genus_zero_is_faithful():
    line = TropicalComplex.from_pieces(2, [], [((0, 0), (-1, -1), 1), ((0, 0), (1, 0), 1), ((0, 0), (0, 1), 1)])
    assert certify_faithful(line, 0).verdict == CERTIFIED
    with pytest.raises(NoCycle):
        kmm_check(line, 0)


def test_higher_multiplicity_blocks_certificates():
    segs = [((0, 0), (2, 0), 2)]
    rays = [((0, 0), (-1, 1), 1), ((0, 0), (-1, -1), 1), ((2, 0), (1, 1), 1), ((2, 0), (1, -1), 1)]
    tc = TropicalComplex.from_pieces(2, segs, rays)
    cert = certify_faithful(tc, 0)
    assert (cert.verdict, cert.rule) == (NOT_CERTIFIED, "multiplicity-one")
    assert cert.witness["non_unit_multiplicity"] == ["segment 0"]


def test_two_cycles():
    squares = [((0, 0), (1, 0), 1), ((1, 0), (1, 1), 1), ((1, 1), (0, 1), 1), ((0, 1), (0, 0), 1),
               ((1, 0), (2, 0), 1), ((2, 0), (2, 1), 1), ((2, 1), (1, 1), 1)]
    with pytest.raises(MultipleCycles):
        kmm_check(TropicalComplex.from_pieces(2, squares), -1)


def test_vertex_multiplicity_rules():
    tc = triangle()
    assert vertex_mult_one(tc, (0, 0)).rule == "trivalent-with-multiplicity-one"
    four = TropicalComplex.from_pieces(
        2, [], [((0, 0), (1, 0), 1), ((0, 0), (-1, 0), 1), ((0, 0), (0, 1), 1), ((0, 0), (0, -1), 1)]
    )
    assert vertex_mult_one(four, 0).verdict == NOT_CERTIFIED
    cross3 = TropicalComplex.from_pieces(3, [], [((0, 0, 0), d, 1) for d in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]])
    assert vertex_mult_one(cross3, 0).rule == "independent-directions-gcd-one"
    lopsided = TropicalComplex.from_pieces(2, [], [((0, 0), (1, 0), 1), ((0, 0), (0, 1), 1)])
    assert vertex_mult_one(lopsided, 0).rule == "balancing"
    with pytest.raises(InputError):
        vertex_mult_one(tc, 17)


def test_certificate_round_trip():
    cert = kmm_check(triangle(), -9)
    assert Certificate.from_dict(cert.to_dict()) == cert
    with pytest.raises(InputError):
        Certificate("MAYBE", "x")


def _lifted(extra_rays):
    segs = [((a, b, 0), (c, d, 0), m) for (a, b), (c, d), m in TRIANGLE]
    rays = [((a, b, 0), (x, y, 0), m) for (a, b), (x, y), m in TRIANGLE_RAYS]
    return TropicalComplex.from_pieces(3, segs, rays + extra_rays)


def test_well_spaced_verdicts():
    h = ((0, 0, 1), 0)
    # balanced vertical departures at two corners
    twice = _lifted([((0, 0, 0), (0, 0, 1), 1), ((0, 0, 0), (0, 0, -1), 1),
                     ((3, 0, 0), (0, 0, 1), 1), ((3, 0, 0), (0, 0, -1), 1)])
    cert = well_spaced_check(twice, h)
    assert (cert.verdict, cert.witness["attained_twice"]) == (CERTIFIED, True)
    once = _lifted([((0, 0, 0), (0, 0, 1), 1), ((0, 0, 0), (0, 0, -1), 1)])
    cert = well_spaced_check(once, h)
    assert (cert.verdict, cert.rule) == (REFUTED, "unique-closest-point")
    assert cert.witness["closest_points"] == [{"point": ["0/1", "0/1", "0/1"], "valence_in_W": 2}]
    three = _lifted([((0, 0, 0), (1, 0, 1), 1), ((0, 0, 0), (-1, 0, 1), 1), ((0, 0, 0), (0, 0, -1), 2)])
    assert well_spaced_check(three, h).rule == "closest-point-valence-three"
    flat = _lifted([])
    assert well_spaced_check(flat, h).rule == "off-hyperplane-part-empty"
    with pytest.raises(CycleNotInHyperplane):
        well_spaced_check(flat, ((1, 0, 0), 0))
