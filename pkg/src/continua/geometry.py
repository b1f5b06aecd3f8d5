"""Exact 1-D geometry on [0,1]: closed sets with finitely many components and
piecewise-linear homeomorphisms of the unit interval.

All coordinates are :class:`fractions.Fraction`; nothing here touches floats.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

ZERO = Fraction(0)
ONE = Fraction(1)

PRESERVING = "preserving"
REVERSING = "reversing"


def rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: a float literal like 0.1 is not the rational it looks like.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact rational")


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Point:
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", rational(self.p))

    @property
    def left(self) -> Fraction:
        return self.p

    @property
    def right(self) -> Fraction:
        return self.p

    def __repr__(self):
        return f"Point({fmt(self.p)})"


@dataclass(frozen=True)
class Interval:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", rational(self.a))
        object.__setattr__(self, "b", rational(self.b))

    @property
    def left(self) -> Fraction:
        return self.a

    @property
    def right(self) -> Fraction:
        return self.b

    def __repr__(self):
        return f"Interval({fmt(self.a)},{fmt(self.b)})"


Component = Union[Point, Interval]


@dataclass(frozen=True)
class ClosedSet1D:
    """A non-empty closed subset of [0,1] with finitely many components.

    The constructor only accepts canonical input (sorted, pairwise disjoint and
    non-touching, every coordinate in [0,1]); use :func:`mk_closed_set` to
    canonicalize arbitrary point/interval lists.
    """

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("closed set must be non-empty")
        prev = None
        for c in comps:
            if not isinstance(c, (Point, Interval)):
                raise TypeError(f"not a component: {c!r}")
            if c.left < 0 or c.right > 1:
                raise ValueError(f"{c!r} leaves [0,1]")
            if isinstance(c, Interval) and not c.a < c.b:
                raise ValueError(f"{c!r} is not a proper interval")
            if prev is not None and not prev.right < c.left:
                raise ValueError(f"components {prev!r} and {c!r} overlap or touch")
            prev = c

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __contains__(self, x) -> bool:
        x = rational(x)
        return any(c.left <= x <= c.right for c in self.components)

    @property
    def points(self) -> tuple:
        return tuple(c for c in self.components if isinstance(c, Point))

    @property
    def intervals(self) -> tuple:
        return tuple(c for c in self.components if isinstance(c, Interval))

    def nearest(self, x: Fraction) -> Fraction:
        """Nearest point of the set to ``x``; ties go to the smaller coordinate."""
        best = None
        for c in self.components:
            cand = min(max(x, c.left), c.right)
            if best is None or abs(cand - x) < abs(best - x) or (
                abs(cand - x) == abs(best - x) and cand < best
            ):
                best = cand
        return best

    def __repr__(self):
        return "ClosedSet1D([" + ", ".join(map(repr, self.components)) + "])"


def mk_closed_set(raw: Iterable) -> ClosedSet1D:
    """Canonicalize a list of Point/Interval items.

    Overlapping or touching items merge; a degenerate Interval(a, a) becomes a
    Point.  Raises ValueError on empty input, a > b, or coordinates off [0,1].
    """
    items = []
    for c in raw:
        if isinstance(c, Point):
            lo = hi = c.p
        elif isinstance(c, Interval):
            lo, hi = c.a, c.b
            if lo > hi:
                raise ValueError(f"interval with a > b: {c!r}")
        else:
            raise TypeError(f"not a component: {c!r}")
        if lo < 0 or hi > 1:
            raise ValueError(f"coordinate outside [0,1]: {c!r}")
        items.append((lo, hi))
    if not items:
        raise ValueError("empty closed set")
    items.sort()
    merged = [list(items[0])]
    for lo, hi in items[1:]:
        if lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return ClosedSet1D(tuple(Point(lo) if lo == hi else Interval(lo, hi) for lo, hi in merged))


@dataclass(frozen=True)
class Gap:
    """Maximal relatively-open subinterval of [0,1] missing the set.

    ``touches_0`` means the gap is [0, b) (it contains 0); likewise ``touches_1``.
    """

    a: Fraction
    b: Fraction
    touches_0: bool = False
    touches_1: bool = False

    def __contains__(self, x) -> bool:
        x = rational(x)
        lo_ok = self.a <= x if self.touches_0 else self.a < x
        hi_ok = x <= self.b if self.touches_1 else x < self.b
        return lo_ok and hi_ok

    def __repr__(self):
        lb = "[" if self.touches_0 else "("
        rb = "]" if self.touches_1 else ")"
        return f"{lb}{fmt(self.a)},{fmt(self.b)}{rb}"


def complement_intervals(A: ClosedSet1D) -> tuple:
    """Gaps of [0,1] - A in increasing order."""
    gaps = []
    comps = A.components
    if comps[0].left > 0:
        gaps.append(Gap(ZERO, comps[0].left, touches_0=True))
    for c, d in zip(comps, comps[1:]):
        gaps.append(Gap(c.right, d.left))
    if comps[-1].right < 1:
        gaps.append(Gap(comps[-1].right, ONE, touches_1=True))
    return tuple(gaps)


def endpoints(A: ClosedSet1D) -> list:
    """Flattened component endpoints, points contributing one entry each."""
    out = []
    for c in A.components:
        if isinstance(c, Point):
            out.append(c.p)
        else:
            out.extend((c.a, c.b))
    return out


# ---------------------------------------------------------------------------
# piecewise-linear homeomorphisms of [0,1]


def _simplify(pairs):
    out = [pairs[0]]
    for i in range(1, len(pairs) - 1):
        (x0, y0), (x1, y1), (x2, y2) = out[-1], pairs[i], pairs[i + 1]
        # drop x1 when it is collinear with its neighbours
        if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
            out.append(pairs[i])
    out.append(pairs[-1])
    return tuple(out)


@dataclass(frozen=True)
class PLHomeo1D:
    """Piecewise-linear self-homeomorphism of [0,1].

    Stored in canonical form: collinear interior breakpoints are dropped, so two
    PLHomeo1D values compare equal iff they are the same map.
    """

    breakpoints: tuple
    orientation: str = PRESERVING

    def __post_init__(self):
        pairs = tuple((rational(x), rational(y)) for x, y in self.breakpoints)
        if len(pairs) < 2:
            raise ValueError("need at least two breakpoints")
        if self.orientation not in (PRESERVING, REVERSING):
            raise ValueError(f"bad orientation {self.orientation!r}")
        if pairs[0][0] != 0 or pairs[-1][0] != 1:
            raise ValueError("breakpoint inputs must start at 0 and end at 1")
        start, stop = (ZERO, ONE) if self.orientation == PRESERVING else (ONE, ZERO)
        if pairs[0][1] != start or pairs[-1][1] != stop:
            raise ValueError("breakpoint outputs do not hit {0,1} as the orientation requires")
        sign = 1 if self.orientation == PRESERVING else -1
        for (x0, y0), (x1, y1) in zip(pairs, pairs[1:]):
            if not x0 < x1:
                raise ValueError("breakpoint inputs must be strictly increasing")
            if not sign * (y1 - y0) > 0:
                raise ValueError(f"not strictly monotone ({self.orientation}) at {fmt(x1)}")
        object.__setattr__(self, "breakpoints", _simplify(pairs))

    @classmethod
    def from_pairs(cls, pairs: Sequence) -> "PLHomeo1D":
        """Build from breakpoints alone, inferring the orientation."""
        pairs = [(rational(x), rational(y)) for x, y in pairs]
        orient = PRESERVING if pairs[0][1] < pairs[-1][1] else REVERSING
        return cls(tuple(pairs), orient)

    @property
    def inputs(self) -> list:
        return [x for x, _ in self.breakpoints]

    @property
    def preserving(self) -> bool:
        return self.orientation == PRESERVING

    def __call__(self, x) -> Fraction:
        return pl_eval(self, x)

    def __repr__(self):
        bp = ", ".join(f"({fmt(x)},{fmt(y)})" for x, y in self.breakpoints)
        return f"PLHomeo1D([{bp}], {self.orientation})"


def identity() -> PLHomeo1D:
    return PLHomeo1D(((ZERO, ZERO), (ONE, ONE)))


def reversal() -> PLHomeo1D:
    return PLHomeo1D(((ZERO, ONE), (ONE, ZERO)), REVERSING)


def pl_eval(h: PLHomeo1D, x) -> Fraction:
    x = rational(x)
    if x < 0 or x > 1:
        raise ValueError(f"{fmt(x)} is outside [0,1]")
    bp = h.breakpoints
    i = bisect_right(h.inputs, x) - 1
    if i >= len(bp) - 1:
        return bp[-1][1]
    (x0, y0), (x1, y1) = bp[i], bp[i + 1]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def pl_image(h: PLHomeo1D, A: ClosedSet1D) -> ClosedSet1D:
    out = []
    for c in A.components:
        if isinstance(c, Point):
            out.append(Point(pl_eval(h, c.p)))
        else:
            u, v = pl_eval(h, c.a), pl_eval(h, c.b)
            out.append(Interval(min(u, v), max(u, v)))
    return mk_closed_set(out)


def pl_invert(h: PLHomeo1D) -> PLHomeo1D:
    return PLHomeo1D(tuple(sorted((y, x) for x, y in h.breakpoints)), h.orientation)


def pl_compose(g: PLHomeo1D, h: PLHomeo1D) -> PLHomeo1D:
    """g after h."""
    hinv = pl_invert(h)
    xs = sorted(set(h.inputs) | {pl_eval(hinv, u) for u in g.inputs})
    orient = PRESERVING if g.preserving == h.preserving else REVERSING
    return PLHomeo1D(tuple((x, pl_eval(g, pl_eval(h, x))) for x in xs), orient)
