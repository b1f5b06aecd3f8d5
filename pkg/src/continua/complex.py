"""Finite geometric complexes: unions of points, segments and axis-aligned
rectangles with exact rational coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional

from .geometry import rational

POINT, SEG, RECT = "point", "seg", "rect"


def vec(coords) -> tuple:
    return tuple(rational(c) for c in coords)


@dataclass(frozen=True)
class Cell:
    """One convex piece of a complex.

    ``verts`` is ``(c,)`` for a point, ``(end0, end1)`` for a segment and
    ``(corner_min, corner_max)`` for a rectangle.  ``tag`` is free-form
    hashable metadata (stripe index, side name, base point, ...) and
    ``chart`` optionally holds logical coordinates the physical ones were
    computed from.
    """

    kind: str
    verts: tuple
    label: str = ""
    tag: tuple = ()
    chart: Optional[tuple] = None

    def __post_init__(self):
        verts = tuple(vec(v) for v in self.verts)
        object.__setattr__(self, "verts", verts)
        want = {POINT: 1, SEG: 2, RECT: 2}.get(self.kind)
        if want is None:
            raise ValueError(f"unknown cell kind {self.kind!r}")
        if len(verts) != want:
            raise ValueError(f"{self.kind} needs {want} vertices")
        if len({len(v) for v in verts}) != 1:
            raise ValueError("vertices of mixed dimension")
        if self.kind == SEG and verts[0] == verts[1]:
            raise ValueError("degenerate segment")
        if self.kind == RECT:
            lo, hi = verts
            spread = [h - l for l, h in zip(lo, hi)]
            if any(s < 0 for s in spread) or sum(1 for s in spread if s > 0) != 2:
                raise ValueError("rectangle must have positive extent in exactly two axes")

    @classmethod
    def point(cls, c, label="", **kw) -> "Cell":
        return cls(POINT, (c,), label, **kw)

    @classmethod
    def seg(cls, a, b, label="", **kw) -> "Cell":
        return cls(SEG, (a, b), label, **kw)

    @classmethod
    def rect(cls, lo, hi, label="", **kw) -> "Cell":
        return cls(RECT, (lo, hi), label, **kw)

    @property
    def dim(self) -> int:
        return len(self.verts[0])

    def bbox(self) -> tuple:
        if self.kind == POINT:
            return self.verts[0], self.verts[0]
        a, b = self.verts
        return tuple(map(min, a, b)), tuple(map(max, a, b))

    def corners(self) -> list:
        """Extreme points (the rectangle's four corners)."""
        if self.kind != RECT:
            return list(self.verts)
        lo, hi = self.verts
        axes = [i for i in range(len(lo)) if hi[i] > lo[i]]
        out = []
        for pick in ((0, 0), (1, 0), (1, 1), (0, 1)):
            c = list(lo)
            for ax, p in zip(axes, pick):
                c[ax] = hi[ax] if p else lo[ax]
            out.append(tuple(c))
        return out

    def lifted(self, extra=Fraction(0)) -> "Cell":
        return replace(self, verts=tuple(v + (extra,) for v in self.verts))

    def shape(self) -> tuple:
        """Geometry only, with segment ends sorted: the identity used for cell-set equality."""
        if self.kind == SEG:
            return (SEG, tuple(sorted(self.verts)))
        return (self.kind, self.verts)


@dataclass(frozen=True)
class GeoComplex:
    dim: int
    cells: tuple
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        for c in cells:
            if c.dim != self.dim:
                raise ValueError(f"cell of dimension {c.dim} in a {self.dim}-dimensional complex")

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def with_label(self, *labels: str) -> list:
        return [i for i, c in enumerate(self.cells) if c.label in labels]

    def count(self, label: str) -> int:
        return sum(1 for c in self.cells if c.label == label)

    def subcomplex(self, indices: Iterable[int]) -> "GeoComplex":
        return GeoComplex(self.dim, tuple(self.cells[i] for i in indices), dict(self.meta))

    def shapes(self) -> list:
        return sorted(c.shape() for c in self.cells)
