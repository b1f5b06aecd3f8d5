"""Test corpora and brute-force reference deciders.

The reference decider for ambient equivalence deliberately ignores the U/V
patterns: it searches all component bijections and keeps the monotone ones.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator

from .geometry import ONE, ZERO, ClosedSet1D, Interval, PLHomeo1D, Point, PRESERVING, REVERSING


def _grid_sets(den: int, max_components: int, start: int, left: int) -> Iterator[list]:
    # all component lists whose first component starts at >= start
    if left == 0:
        return
    for a in range(start, den + 1):
        for b in range(a, den + 1):
            comp = Point(Fraction(a, den)) if a == b else Interval(Fraction(a, den), Fraction(b, den))
            yield [comp]
            for rest in _grid_sets(den, max_components, b + 1, left - 1):
                yield [comp] + rest


def grid_sets(den: int = 12, max_components: int = 4) -> list:
    """Every canonical closed set with at most ``max_components`` components
    whose endpoints lie on the grid {k/den}."""
    return [ClosedSet1D(tuple(cs)) for cs in _grid_sets(den, max_components, 0, max_components)]


def single_component_sets(den: int = 12) -> list:
    return grid_sets(den, 1)


def component_types(A: ClosedSet1D) -> tuple:
    return tuple("p" if isinstance(c, Point) else "i" for c in A.components)


def r1_oracle(A: ClosedSet1D, B: ClosedSet1D) -> bool:
    """Is there a monotone bijection of components respecting type and the
    membership of 0 and 1?  Brute force over all permutations."""
    ca, cb = A.components, B.components
    if len(ca) != len(cb):
        return False
    k = len(ca)
    for perm in itertools.permutations(range(k)):
        inc = all(perm[i] < perm[i + 1] for i in range(k - 1))
        dec = all(perm[i] > perm[i + 1] for i in range(k - 1))
        if not (inc or dec):
            continue
        if any(type(ca[i]) is not type(cb[perm[i]]) for i in range(k)):
            continue
        if inc and _ends_ok(A, B, False):
            return True
        if dec and _ends_ok(A, B, True):
            return True
    return False


def _ends_ok(A, B, flip: bool) -> bool:
    a0, a1 = ZERO in A, ONE in A
    b0, b1 = ZERO in B, ONE in B
    return (a0, a1) == ((b1, b0) if flip else (b0, b1))


# ---------------------------------------------------------------------------
# random generators (seeded, deterministic)


def random_closed_set(rng: random.Random, max_components: int = 4, den: int = 24) -> ClosedSet1D:
    k = rng.randint(1, max_components)
    cuts = sorted(rng.sample(range(den + 1), 2 * k))
    comps = []
    for j in range(k):
        a, b = Fraction(cuts[2 * j], den), Fraction(cuts[2 * j + 1], den)
        comps.append(Point(a) if rng.random() < 0.4 else Interval(a, b))
    return ClosedSet1D(tuple(comps))


def random_pl_homeo(rng: random.Random, max_breakpoints: int = 5, den: int = 16) -> PLHomeo1D:
    """Random PL homeomorphism with at most ``max_breakpoints`` breakpoints
    (endpoints included) and dyadic-ish rational coordinates."""
    inner = rng.randint(0, max(0, max_breakpoints - 2))
    xs = sorted(rng.sample(range(1, den), inner))
    ys = sorted(rng.sample(range(1, den), inner))
    xs = [ZERO] + [Fraction(v, den) for v in xs] + [ONE]
    ys = [ZERO] + [Fraction(v, den) for v in ys] + [ONE]
    if rng.random() < 0.5:
        return PLHomeo1D(tuple(zip(xs, ys)), PRESERVING)
    return PLHomeo1D(tuple(zip(xs, [1 - y for y in ys])), REVERSING)
