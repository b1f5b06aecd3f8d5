"""Countable-structure invariants of closed subsets of [0,1], and the two
deciders built on them.

* ``extract_T`` gives the spatial U/V pattern: U for the interior of each
  interval component, V for each gap of the complement.
* ``extract_S`` gives the clopen-algebra invariant, which for a finite
  presentation is just (number of point components, number of intervals).
* ``decide_h1`` decides homeomorphism of the sets themselves,
  ``decide_r1`` decides existence of an ambient homeomorphism of [0,1]
  carrying one set onto the other (and can produce the witness).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .geometry import (
    ONE,
    PRESERVING,
    REVERSING,
    ZERO,
    ClosedSet1D,
    Interval,
    PLHomeo1D,
    Point,
    complement_intervals,
    endpoints,
    mk_closed_set,
    pl_image,
)


@dataclass(frozen=True)
class Entry:
    kind: str  # "U" or "V"
    touches_0: bool = False
    touches_1: bool = False

    def swapped(self) -> "Entry":
        return Entry(self.kind, self.touches_1, self.touches_0)


@dataclass(frozen=True)
class UVPattern:
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def letters(self) -> str:
        return "".join(e.kind for e in self.entries)

    def reversed_swapped(self) -> "UVPattern":
        return UVPattern(tuple(e.swapped() for e in reversed(self.entries)))

    def __str__(self):
        t0 = "+" if any(e.touches_0 for e in self.entries) else "-"
        t1 = "+" if any(e.touches_1 for e in self.entries) else "-"
        return " ".join(e.kind for e in self.entries) + f" | t0:{t0} t1:{t1}"


@dataclass(frozen=True)
class SInvariant:
    point_count: int
    interval_count: int

    def __post_init__(self):
        if self.point_count < 0 or self.interval_count < 0:
            raise ValueError("counts must be non-negative")
        if self.point_count + self.interval_count < 1:
            raise ValueError("a closed set has at least one component")


@dataclass(frozen=True)
class MPair:
    forward: UVPattern
    mirrored: UVPattern


def extract_T(A: ClosedSet1D) -> UVPattern:
    spans = []
    for c in A.intervals:
        spans.append((c.a, Entry("U")))
    for g in complement_intervals(A):
        spans.append((g.a, Entry("V", g.touches_0, g.touches_1)))
    # a U and a V never share a left endpoint: a U starts where A starts, a V where A ends
    spans.sort(key=lambda s: (s[0], s[1].kind == "U"))
    return UVPattern(tuple(e for _, e in spans))


def mirror_set(A: ClosedSet1D) -> ClosedSet1D:
    out = []
    for c in A.components:
        if isinstance(c, Point):
            out.append(Point(1 - c.p))
        else:
            out.append(Interval(1 - c.b, 1 - c.a))
    return mk_closed_set(out)


def extract_S(A: ClosedSet1D) -> SInvariant:
    return SInvariant(len(A.points), len(A.intervals))


def extract_M(A: ClosedSet1D) -> MPair:
    return MPair(extract_T(A), extract_T(mirror_set(A)))


def decide_h1(A: ClosedSet1D, B: ClosedSet1D) -> bool:
    return extract_S(A) == extract_S(B)


def decide_r1(A: ClosedSet1D, B: ClosedSet1D) -> bool:
    ta = extract_T(A)
    return ta == extract_T(B) or ta == extract_T(mirror_set(B))


def r1_witness(A: ClosedSet1D, B: ClosedSet1D) -> Optional[PLHomeo1D]:
    """A PL homeomorphism h of [0,1] with h[A] = B, or None if none exists.

    The map sends component endpoints of A to those of B (in order, or in
    reverse order for the mirrored match) and interpolates linearly between.
    """
    ta = extract_T(A)
    if ta == extract_T(B):
        src, dst, orient = endpoints(A), endpoints(B), PRESERVING
        ends = [(ZERO, ZERO), (ONE, ONE)]
    elif ta == extract_T(mirror_set(B)):
        src, dst, orient = endpoints(A), endpoints(B)[::-1], REVERSING
        ends = [(ZERO, ONE), (ONE, ZERO)]
    else:
        return None
    pairs = dict(zip(src, dst))
    for x, y in ends:
        pairs.setdefault(x, y)
    h = PLHomeo1D(tuple(sorted(pairs.items())), orient)
    if pl_image(h, A) != B:
        raise AssertionError(f"witness construction failed for {A!r} -> {B!r}")
    return h


def pattern_order_iso(P: UVPattern, n: int, labels: Optional[Sequence[int]] = None) -> bool:
    """Is the V-part of ``P`` order-isomorphic to an ``n``-element linear order?

    Finite linear orders of the same size are isomorphic, so without labels
    this compares sizes.  With ``labels`` (the order rank of the element each
    V entry was created for, in spatial order) it also checks that the
    correspondence between gaps and elements is the order isomorphism itself.
    """
    n = getattr(n, "n", n)
    vs = [e for e in P.entries if e.kind == "V"]
    if labels is None:
        return len(vs) == n
    if any(e.kind == "U" for e in P.entries):
        raise ValueError("pattern has a U entry; element labels only make sense for empty interior")
    if len(labels) != len(vs):
        return False
    return len(vs) == n and list(labels) == list(range(1, n + 1))
