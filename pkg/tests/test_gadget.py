import math
import random
from fractions import Fraction as F

import pytest

from continua.gadget import (
    FSCALE_ERROR,
    IntSeq,
    build_F,
    connector_points,
    difference_metric,
    displacement_profile,
    fscale,
    fscale_inv,
    i0_cells,
    max_shift_displacement,
    rect,
    region_of,
    sigma_eval,
    sigma_logical,
    sigma_verify,
)
from continua.topology import path_components, puncture

from oracles import DELTA_ONE_CLOSED_FORM, max_gap_grid

HALF = F(1, 2)


def test_intseq_indexing():
    x = IntSeq((3, -1))
    assert (x[1], x[2], x[7]) == (3, -1, 0)
    with pytest.raises(IndexError):
        x[0]
    with pytest.raises(ValueError):
        IntSeq(())
    assert difference_metric((0, 0), (1, 4)) == 2


def test_fscale_exact_points():
    assert fscale(0) == HALF
    assert fscale(1) == F(2, 3)
    assert fscale(-1) == F(1, 3)
    assert fscale(math.inf) == 1 and fscale(-math.inf) == 0
    assert abs(float(fscale(HALF)) - 1 / (1 + 2**-0.5)) < 2**-40


def test_fscale_inverse():
    for z in (0, 3, -5, F(1, 2), F(-7, 3), F(5, 4)):
        assert fscale_inv(fscale(z)) == z
    assert fscale_inv(0) == -math.inf and fscale_inv(1) == math.inf
    with pytest.raises(ValueError):
        fscale_inv(F(3, 2))


def test_rect_examples():
    assert rect(1, 0).verts == ((F(1, 3), HALF), (HALF, F(2, 3)))
    assert rect(1, -1).verts == ((F(1, 3), F(1, 3)), (HALF, HALF))
    r = rect(2, 0)
    assert r.verts[0][0] == F(1, 5) and r.verts[1][0] == F(1, 4)
    assert r.chart == ((F(1, 5), 0), (F(1, 4), HALF))


def test_build_F_errors():
    with pytest.raises(ValueError):
        build_F((0,), 4)
    with pytest.raises(ValueError):
        build_F((0, 0), 1)


def test_filled_rect_marker():
    x = IntSeq((2, -1, 0, 5))
    C = build_F(x, 3)
    filled = [c for c in C.cells if c.kind == "rect"]
    assert sorted(c.tag for c in filled) == [("rect", n, x[n] + 1) for n in range(1, 5)]


def test_connector_endpoints():
    x = IntSeq((0, 3, 0))
    pts = connector_points(x, 1)
    assert pts[0] == (F(1, 3), HALF)
    assert pts[-1] == (F(1, 4), (x[2] + HALF) / 2)
    C = build_F(x, 4)
    first = next(c for c in C.cells if c.tag == ("connector", 1, 0))
    assert first.verts[0] == (F(1, 3), fscale(HALF))
    last = max((c for c in C.cells if c.label == "connector" and c.tag[1] == 1), key=lambda c: c.tag[2])
    assert last.verts[1] == (F(1, 4), fscale(F(7, 4)))


def test_two_components_and_junction():
    C = build_F((0, 0, 0), 4)
    assert path_components(C).count == 2
    r = puncture(C.subcomplex(i0_cells(C)), (0, HALF))
    assert r.is_cut and r.component_count_after == 3


def test_sigma_examples():
    x, y = (0, 0), (1, 0)
    assert sigma_eval(x, y, (F(1, 3), HALF)) == (F(1, 3), F(2, 3))
    assert sigma_eval(x, y, (F(2, 3), HALF)) == (F(2, 3), fscale(HALF))
    assert region_of(F(2, 3)).kind == "outer"
    assert sigma_eval(x, y, (F(-1, 2), F(1, 5))) == (F(-1, 2), F(1, 5))
    with pytest.raises(ValueError):
        sigma_eval(x, y, (F(1, 3), F(3, 2)))


def test_sigma_identity_when_equal():
    x = (2, -3, 1)
    rng = random.Random(1)
    for _ in range(50):
        p = (F(rng.randint(1, 99), 100), F(rng.randint(1, 99), 100))
        assert sigma_eval(x, x, p) == p
    rep = sigma_verify(x, x, 4)
    assert rep.ok and all(v == 0 for v in rep.displacement.values())


def test_sigma_round_trip_logical():
    rng = random.Random(2)
    x, y = (1, 0, -2, 3), (0, 2, -1, 3)
    for _ in range(200):
        X, z = F(rng.randint(1, 999), 1000), F(rng.randint(-400, 400), 60)
        assert sigma_logical(y, x, *sigma_logical(x, y, X, z)) == (X, z)


def test_verify_difference_only_at_last():
    x, y = (0, 0, 0, 0), (0, 0, 0, 1)
    rep = sigma_verify(x, y, 4)
    assert rep.ok
    assert {n for n, v in rep.displacement.items() if v} == {4}
    assert {n for n, v in rep.connector_displacement.items() if v} == {3}


def test_verify_first_stripe_shift():
    rep = sigma_verify((0, 0, 0, 0), (4, 0, 0, 0), 4)
    assert rep.ok
    moved = {s[2]: t[2] for s, t in rep.cell_map if s[1] == 1}
    assert moved == {1: 5}


def test_verify_flip_mutant_caught():
    assert not sigma_verify((0, 0, 0), (1, 0, -1), 4, mutant="flip").ok


def test_profile_against_grid_oracle():
    for delta in (F(1), F(1, 2), F(-3, 4), F(5)):
        assert abs(max_shift_displacement(delta) - max_gap_grid(float(delta))) < 2**-20
    assert abs(max_shift_displacement(1) - DELTA_ONE_CLOSED_FORM) < 2**-20
    assert displacement_profile((3, 3), (3, 3)) == [0.0, 0.0]
    prof = displacement_profile((0,) * 6, (1,) * 6)
    assert all(a > b for a, b in zip(prof, prof[1:]))


def test_connector_vertices_are_cut_points():
    C = build_F((0, 1, -1), 4)
    base = path_components(C).count
    for c in C.cells:
        if c.label == "connector" and c.tag[2] in (5, 31, 62):
            r = puncture(C, c.verts[1])
            assert r.is_cut and r.component_count_after == base + 1


def test_side_interiors_are_not_cut_points():
    C = build_F((0, 1, -1), 4)
    for c in C.cells:
        if c.tag and c.tag[0] == "side" and c.tag[3] in ("l", "r") and c.tag[2] in (-2, 4):
            mid = tuple((a + b) / 2 for a, b in zip(*c.verts))
            assert not puncture(C, mid).is_cut


def test_fscale_error_constant():
    assert FSCALE_ERROR == F(1, 2**40)
