"""Encode a finite linear order as a closed subset of [0,1] by removing one
open interval per element, in enumeration order.

The gaps of the resulting set, read left to right, are the elements of the
order read from least to greatest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import ONE, ZERO, ClosedSet1D, Interval, Point, complement_intervals, mk_closed_set
from .invariants import extract_T, pattern_order_iso

THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class LinearOrderSpec:
    """``ranks[k]`` is the rank (1 = least) of the (k+1)-th enumerated element."""

    n: int
    ranks: tuple

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if self.n < 1:
            raise ValueError("order must be non-empty")
        if sorted(ranks) != list(range(1, self.n + 1)):
            raise ValueError(f"ranks {list(ranks)} are not a permutation of 1..{self.n}")

    @classmethod
    def from_ranks(cls, ranks: Sequence[int]) -> "LinearOrderSpec":
        return cls(len(ranks), tuple(ranks))


@dataclass(frozen=True)
class RemovedIntervals:
    """Open intervals (a_k, b_k), indexed by enumeration step."""

    intervals: tuple

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)


def encode_order(R: LinearOrderSpec) -> tuple:
    """Return ``(RemovedIntervals, A_R)``."""
    n = R.n
    rank = R.ranks
    placed: list = []  # (rank, a, b) for enumerated elements

    for step, r in enumerate(rank):
        least, largest = r == 1, r == n
        if step == 0:
            if least and largest:
                # one-element order: both one-sided rules apply at once
                a, b = ZERO, ONE
            elif least:
                a, b = ZERO, THIRD
            elif largest:
                a, b = TWO_THIRDS, ONE
            else:
                a, b = THIRD, TWO_THIRDS
        else:
            below = [p for p in placed if p[0] < r]
            above = [p for p in placed if p[0] > r]
            lo = max(below) if below else None
            hi = min(above) if above else None
            assert lo is not None or hi is not None, "only the first step lacks both neighbours"
            if lo is not None and hi is not None:
                _, _, b_i = lo
                _, a_j, _ = hi
                a = b_i if r - lo[0] == 1 else TWO_THIRDS * b_i + THIRD * a_j
                b = a_j if hi[0] - r == 1 else THIRD * b_i + TWO_THIRDS * a_j
            elif lo is None:
                _, a_j, _ = hi
                a = ZERO if least else THIRD * a_j
                b = a_j if hi[0] - r == 1 else TWO_THIRDS * a_j
            else:
                _, _, b_i = lo
                a = b_i if r - lo[0] == 1 else TWO_THIRDS * b_i + THIRD
                b = ONE if largest else THIRD * b_i + TWO_THIRDS
        placed.append((r, a, b))

    removed = RemovedIntervals(tuple((a, b) for _, a, b in placed))
    return removed, complement_of(removed)


def complement_of(removed: RemovedIntervals) -> ClosedSet1D:
    """[0,1] minus the union of the open intervals."""
    spans = sorted(removed.intervals)
    pieces = []
    cursor = ZERO
    for a, b in spans:
        if a < cursor:
            raise ValueError("removed intervals overlap")
        pieces.append(Point(a) if a == cursor else Interval(cursor, a))
        cursor = b
    pieces.append(Point(ONE) if cursor == ONE else Interval(cursor, ONE))
    return mk_closed_set(pieces)


def verify_encoding(R: LinearOrderSpec, removed: Optional[RemovedIntervals] = None) -> bool:
    """Check the encoding of ``R`` (or a supplied interval family for it)."""
    if removed is None:
        removed, _ = encode_order(R)
    if len(removed) != R.n:
        return False
    order = sorted(range(R.n), key=lambda k: removed.intervals[k])
    # pairwise disjoint and inside [0,1]
    for k in order:
        a, b = removed.intervals[k]
        if not (0 <= a < b <= 1):
            return False
    for k, l in zip(order, order[1:]):
        if removed.intervals[k][1] > removed.intervals[l][0]:
            return False
    # (a) spatial order of intervals = rank order of their elements
    if [R.ranks[k] for k in order] != list(range(1, R.n + 1)):
        return False
    A = complement_of(removed)
    T = extract_T(A)
    # (b) empty interior
    if any(e.kind == "U" for e in T.entries):
        return False
    # (c) gaps are exactly the removed intervals, and they carry the order
    gaps = complement_intervals(A)
    by_span = {tuple(iv): k for k, iv in enumerate(removed.intervals)}
    labels = []
    for g in gaps:
        k = by_span.get((g.a, g.b))
        if k is None:
            return False
        labels.append(R.ranks[k])
    return pattern_order_iso(T, R.n, labels)
