import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from tropskel import TropicalComplex, TropicalPolynomial, corner_locus, render_svg, write_svg
from tropskel.errors import UnsupportedDimension
from tropskel.render import short
from tropskel.scenarios import EXAMPLE2A, EXAMPLE3, example1, goodgenus1

GOLDEN = Path(__file__).parent / "golden"
SVG = "{http://www.w3.org/2000/svg}"


def texts(svg: str) -> list[str]:
    return [t.text for t in ET.fromstring(svg).iter(f"{SVG}text")]


def test_line_skeleton_matches_golden_file():
    assert render_svg(example1()[0]) == (GOLDEN / "example1-skeleton.svg").read_text(encoding="utf-8")


def test_output_is_byte_stable():
    tc = corner_locus(TropicalPolynomial.from_string(EXAMPLE3))
    assert render_svg(tc) == render_svg(tc)
    sk = goodgenus1(7)[0]
    assert render_svg(sk) == render_svg(sk)


def test_square_sides_are_labelled_two():
    labels = texts(render_svg(corner_locus(TropicalPolynomial.from_string(EXAMPLE2A))))
    assert labels.count("2") == 4


def test_multiplicity_labels():
    labels = texts(render_svg(corner_locus(TropicalPolynomial.from_string(EXAMPLE3))))
    assert labels.count("1 (m=2)") == 2
    assert "m=2" in labels


def test_circle_skeleton_labels():
    labels = texts(render_svg(goodgenus1(12)[0]))
    assert labels.count("4") == 3
    assert {"0", "alpha", "beta"} <= set(labels)


def test_empty_complex_is_valid_svg():
    root = ET.fromstring(render_svg(TropicalComplex.empty(2)))
    assert root.tag == f"{SVG}svg"


def test_only_plane_complexes():
    with pytest.raises(UnsupportedDimension):
        render_svg(TropicalComplex.empty(3))


def test_write_creates_directories(tmp_path):
    out = write_svg(TropicalComplex.empty(2), tmp_path / "a" / "b.svg")
    assert out.read_text(encoding="utf-8").startswith("<?xml")


def test_short_labels():
    from fractions import Fraction

    assert (short(Fraction(4)), short(Fraction(1, 3))) == ("4", "1/3")
