from fractions import Fraction as F

import pytest

from continua.corpus import grid_sets, r1_oracle
from continua.encoder import LinearOrderSpec, encode_order
from continua.geometry import Interval, Point, mk_closed_set, pl_image
from continua.invariants import (
    Entry,
    SInvariant,
    UVPattern,
    decide_h1,
    decide_r1,
    extract_M,
    extract_S,
    extract_T,
    mirror_set,
    pattern_order_iso,
    r1_witness,
)
from oracles import member_by_components


def S(*items):
    return mk_closed_set(list(items))


def P(x):
    return Point(F(x))


def I(a, b):
    return Interval(F(a), F(b))


def scan_letters(A, res=240):
    """U/V letters read off a membership scan: runs of interior samples of A
    (U) and runs of samples outside A (V)."""
    out = []
    prev = None
    for k in range(res + 1):
        x = F(k, res)
        inside = member_by_components(A, x)
        interior = inside and member_by_components(A, x - F(1, 2 * res)) and member_by_components(A, x + F(1, 2 * res))
        cls = "U" if interior else ("V" if not inside else None)
        if cls and cls != prev:
            out.append(cls)
        prev = cls if cls else None
    return "".join(out)


def test_T_examples():
    A = S(I(0, F(1, 4)), P(F(1, 2)), I(F(3, 4), 1))
    assert extract_T(A).letters == "UVVU"
    assert scan_letters(A) == "UVVU"
    assert str(extract_T(A)) == "U V V U | t0:- t1:-"
    T = extract_T(S(P(F(1, 2))))
    assert T.entries == (Entry("V", True, False), Entry("V", False, True))
    assert extract_T(S(I(0, 1))).letters == "U"


def test_mirror_examples():
    assert mirror_set(S(P(0))) == S(P(1))
    assert mirror_set(S(I(0, F(1, 4)))) == S(I(F(3, 4), 1))
    assert mirror_set(S(P(F(1, 3)), I(F(1, 2), 1))) == S(I(0, F(1, 2)), P(F(2, 3)))


def test_S_examples():
    assert extract_S(S(P(0), P(F(1, 2)), P(1))) == SInvariant(3, 0)
    assert extract_S(S(I(0, 1))) == SInvariant(0, 1)
    _, A = encode_order(LinearOrderSpec.from_ranks((1, 2)))
    assert extract_S(A) == SInvariant(3, 0)
    with pytest.raises(ValueError):
        SInvariant(0, 0)


def test_M_pair():
    A = S(P(0), I(F(1, 2), F(3, 4)))
    M = extract_M(A)
    assert M.mirrored == M.forward.reversed_swapped()


def test_h1_examples():
    assert decide_h1(S(P(0), P(F(1, 2)), P(1)), S(P(F(1, 3)), P(F(2, 3)), P(1)))
    assert not decide_h1(S(I(0, 1)), S(P(F(1, 2))))
    A, B = S(I(0, F(1, 4)), P(F(1, 2))), S(P(0), I(F(1, 2), 1))
    assert decide_h1(A, B)
    # the oracle agrees: same multiset of component types
    assert sorted(type(c).__name__ for c in A) == sorted(type(c).__name__ for c in B)


def test_r1_examples():
    A = S(I(0, F(1, 4)), P(F(1, 2)))
    assert decide_r1(A, A)
    assert not decide_r1(S(P(0)), S(P(F(1, 2))))
    assert not r1_oracle(S(P(0)), S(P(F(1, 2))))
    assert decide_r1(S(P(0)), S(P(1)))
    h = r1_witness(S(P(0)), S(P(1)))
    assert h.breakpoints == ((0, 1), (1, 0))


def test_r1_witness_none_when_unrelated():
    assert r1_witness(S(P(0)), S(P(F(1, 2)))) is None


def test_pattern_order_iso():
    _, A = encode_order(LinearOrderSpec.from_ranks((2, 1, 3)))
    T = extract_T(A)
    assert pattern_order_iso(T, LinearOrderSpec.from_ranks((1, 2, 3)))
    two = UVPattern((Entry("V", True), Entry("V", False, True)))
    assert not pattern_order_iso(two, 3)
    assert pattern_order_iso(two, 2)
    with pytest.raises(ValueError):
        pattern_order_iso(extract_T(S(I(0, F(1, 2)))), 1, labels=[1])


@pytest.fixture(scope="module")
def small_corpus():
    return grid_sets(6, 3)


def test_r1_is_equivalence_relation(small_corpus):
    sets = small_corpus
    keys = {}
    for A in sets:
        keys.setdefault(extract_T(A), []).append(A)
    reps = [v[0] for v in keys.values()]
    rel = {(i, j): decide_r1(a, b) for i, a in enumerate(reps) for j, b in enumerate(reps)}
    n = len(reps)
    assert all(rel[(i, i)] for i in range(n))
    assert all(rel[(i, j)] == rel[(j, i)] for i in range(n) for j in range(n))
    for i in range(n):
        for j in range(n):
            if rel[(i, j)]:
                assert all(rel[(j, k)] <= rel[(i, k)] for k in range(n))


def test_r1_implies_h1_and_witness(small_corpus):
    sets = small_corpus
    for A in sets[::7]:
        for B in sets[::11]:
            if decide_r1(A, B):
                assert decide_h1(A, B)
                h = r1_witness(A, B)
                assert pl_image(h, A) == B
            assert decide_r1(A, B) == r1_oracle(A, B)
