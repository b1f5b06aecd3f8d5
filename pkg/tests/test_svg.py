import re
from fractions import Fraction as F

import pytest

from continua.coding import build_hat, build_J
from continua.complex import Cell, GeoComplex
from continua.gadget import build_F
from continua.geometry import Point, mk_closed_set
from continua.svg import render_svg


def _floats(attr, text):
    return [float(v) for v in re.findall(attr + r'="([-0-9.]+)"', text)]


def test_gadget_layout():
    svg = render_svg(build_F((0, 0, 0), 4))
    filled = re.findall(r'<rect class="stripe filled"[^>]*>', svg)
    assert len(filled) == 3
    xs = sorted(float(re.search(r' x="([-0-9.]+)"', r).group(1)) for r in filled)
    for got, want in zip(xs, (1 / 7, 1 / 5, 1 / 3)):
        assert abs(got - want) < 2**-12
    assert svg.count('class="connector"') == 2
    assert svg.count('class="I0"') == 2


def test_connector_sample_cap():
    svg = render_svg(build_F((0, 0), 2), samples=8)
    path = re.search(r'<path class="connector"[^>]* d="([^"]+)"', svg).group(1)
    assert path.count("L") == 8


def test_hat_two_points():
    svg = render_svg(build_hat(mk_closed_set([Point(0), Point(1)])))
    lines = re.findall(r"<line [^>]*>", svg)
    assert len(lines) == 3
    x1 = sorted(float(re.search(r'x1="([-0-9.]+)"', l).group(1)) for l in lines)
    assert abs(x1[0] - 1 / 3) < 2**-12 and abs(x1[-1] - 2 / 3) < 2**-12


def test_unlabelled_default_style():
    C = GeoComplex(2, (Cell.seg((0, 0), (1, 1)), Cell.point((F(1, 2), 0))))
    svg = render_svg(C)
    assert svg.count('class="cell"') == 2 and 'stroke="black" fill="none"' in svg


def test_three_d_projection_and_errors():
    svg = render_svg(build_J(mk_closed_set([Point(0)]), 1))
    assert "<circle" in svg and "<line" in svg
    with pytest.raises(ValueError):
        render_svg(GeoComplex(4, (Cell.point((0, 0, 0, 0)),)))
    with pytest.raises(ValueError):
        render_svg(build_F((0, 0), 2), samples=0)


def test_deterministic():
    assert render_svg(build_F((1, 2, 0), 2)) == render_svg(build_F((1, 2, 0), 2))
