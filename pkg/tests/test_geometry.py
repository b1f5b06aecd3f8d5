from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from continua.geometry import (
    ClosedSet1D,
    Interval,
    PLHomeo1D,
    Point,
    complement_intervals,
    identity,
    mk_closed_set,
    pl_compose,
    pl_eval,
    pl_image,
    pl_invert,
    reversal,
)
from oracles import grid_scan, interp

H = PLHomeo1D.from_pairs([(0, 0), (F(1, 2), F(1, 4)), (1, 1)])


def test_canonical_merges():
    assert mk_closed_set([Interval(F(0), F(1, 4)), Point(F(1, 4))]).components == (Interval(F(0), F(1, 4)),)
    assert mk_closed_set([Point(F(1, 2)), Point(F(1, 4))]).components == (Point(F(1, 4)), Point(F(1, 2)))
    merged = mk_closed_set([Interval(F(1, 3), F(1, 2)), Interval(F(2, 5), F(3, 5))])
    assert merged.components == (Interval(F(1, 3), F(3, 5)),)


@pytest.mark.parametrize(
    "raw",
    [[], [Point(F(3, 2))], [Interval(F(-1, 2), F(1, 2))]],
)
def test_canonical_rejects(raw):
    with pytest.raises(ValueError):
        mk_closed_set(raw)


def test_inverted_interval_rejected():
    with pytest.raises(ValueError):
        mk_closed_set([Interval(F(1, 2), F(1, 4))])


def test_floats_refused():
    with pytest.raises(TypeError):
        Point(0.5)


def test_complement_examples():
    g = complement_intervals(mk_closed_set([Point(F(1, 2))]))
    assert [(x.a, x.b, x.touches_0, x.touches_1) for x in g] == [
        (0, F(1, 2), True, False),
        (F(1, 2), 1, False, True),
    ]
    g = complement_intervals(mk_closed_set([Point(F(0))]))
    assert [(x.a, x.b, x.touches_0, x.touches_1) for x in g] == [(0, 1, False, True)]


def test_complement_three_components_frozen():
    A = mk_closed_set([Interval(F(0), F(1, 4)), Point(F(1, 2)), Interval(F(3, 4), F(1))])
    gaps = complement_intervals(A)
    assert [(g.a, g.b) for g in gaps] == [(F(1, 4), F(1, 2)), (F(1, 2), F(3, 4))]
    assert grid_scan(A, gaps, 256) == []


def test_pl_eval_examples():
    assert pl_eval(identity(), F(1, 3)) == F(1, 3)
    assert pl_eval(reversal(), F(1, 4)) == F(3, 4)
    assert pl_eval(H, F(3, 4)) == F(5, 8)
    for k in range(65):
        x = F(k, 64)
        assert abs(float(pl_eval(H, x)) - interp(H.breakpoints, float(x))) < 1e-12
    with pytest.raises(ValueError):
        pl_eval(H, F(5, 4))


def test_pl_image_examples():
    A = mk_closed_set([Interval(F(1, 3), F(1, 2)), Point(F(0))])
    assert pl_image(identity(), A) == A
    B = mk_closed_set([Point(F(0)), Interval(F(1, 2), F(1))])
    assert pl_image(reversal(), B) == mk_closed_set([Interval(F(0), F(1, 2)), Point(F(1))])
    assert pl_image(H, mk_closed_set([Interval(F(1, 4), F(3, 4))])) == mk_closed_set([Interval(F(1, 8), F(5, 8))])


def test_compose_and_invert_examples():
    assert pl_compose(identity(), H) == H
    assert pl_invert(reversal()) == reversal()
    assert pl_invert(H).breakpoints == ((0, 0), (F(1, 4), F(1, 2)), (1, 1))


def test_invalid_homeo_rejected():
    with pytest.raises(ValueError):
        PLHomeo1D(((F(0), F(0)), (F(1, 2), F(1, 2)), (F(1), F(1, 2))), "preserving")
    with pytest.raises(ValueError):
        PLHomeo1D(((F(0), F(1)), (F(1), F(0))), "preserving")


# ---------------------------------------------------------------------------
# properties

coord = st.integers(0, 48).map(lambda k: F(k, 48))


@st.composite
def raw_items(draw):
    items = []
    for _ in range(draw(st.integers(1, 5))):
        a, b = sorted((draw(coord), draw(coord)))
        items.append(Point(a) if a == b or draw(st.booleans()) else Interval(a, b))
    return items


@st.composite
def pl_maps(draw):
    k = draw(st.integers(0, 4))
    xs = sorted(draw(st.sets(st.integers(1, 47), min_size=k, max_size=k)))
    ys = sorted(draw(st.sets(st.integers(1, 47), min_size=k, max_size=k)))
    xs = [F(0)] + [F(v, 48) for v in xs] + [F(1)]
    ys = [F(0)] + [F(v, 48) for v in ys] + [F(1)]
    if draw(st.booleans()):
        ys = [1 - y for y in ys]
    return PLHomeo1D.from_pairs(list(zip(xs, ys)))


@settings(max_examples=150, deadline=None)
@given(raw_items())
def test_canonicalization_idempotent(raw):
    A = mk_closed_set(raw)
    assert mk_closed_set(A.components) == A


@settings(max_examples=100, deadline=None)
@given(raw_items(), st.sampled_from([64, 96, 256]))
def test_complement_partitions_unit_interval(raw, res):
    A = mk_closed_set(raw)
    assert grid_scan(A, complement_intervals(A), res) == []


@settings(max_examples=150, deadline=None)
@given(pl_maps(), raw_items())
def test_image_round_trip_and_counts(h, raw):
    A = mk_closed_set(raw)
    B = pl_image(h, A)
    assert pl_image(pl_invert(h), B) == A
    assert (len(B.points), len(B.intervals)) == (len(A.points), len(A.intervals))


@settings(max_examples=100, deadline=None)
@given(pl_maps(), pl_maps(), st.integers(0, 96))
def test_compose_and_invert_exact(g, h, k):
    x = F(k, 96)
    assert pl_eval(pl_invert(h), pl_eval(h, x)) == x
    assert pl_eval(pl_compose(g, h), x) == pl_eval(g, pl_eval(h, x))
