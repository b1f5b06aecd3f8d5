"""Path components and cut points of finite complexes.

Every cell is convex, so a union of cells is path-connected exactly when
the graph "cells meet" restricted to them is connected.  All incidence
tests are exact over the rationals.

Removing a finite set of points P is modelled by splitting each segment at
the points of P in its interior, dropping point cells in P, and joining two
pieces only when their intersection is not contained in P.  A filled
rectangle minus finitely many points is still path-connected, so rectangles
are never split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy import ndimage
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .complex import POINT, RECT, SEG, Cell, GeoComplex, vec

EMPTY = None
MANY = "many"


# ---------------------------------------------------------------------------
# exact convex intersections


def _box_of(cell: Cell):
    if cell.kind == POINT:
        return cell.verts[0], cell.verts[0]
    return cell.verts  # rect: (lo, hi)


def _boxes_meet(lo1, hi1, lo2, hi2) -> bool:
    return all(a <= d and c <= b for a, b, c, d in zip(lo1, hi1, lo2, hi2))


def _box_box(lo1, hi1, lo2, hi2):
    lo = tuple(map(max, lo1, lo2))
    hi = tuple(map(min, hi1, hi2))
    if any(l > h for l, h in zip(lo, hi)):
        return EMPTY
    if lo == hi:
        return lo
    return MANY


def _seg_trange(a, b, lo, hi):
    """Parameter range [t0, t1] of a + t(b-a) inside the closed box, or None."""
    t0, t1 = Fraction(0), Fraction(1)
    for ai, bi, l, h in zip(a, b, lo, hi):
        d = bi - ai
        if d == 0:
            if ai < l or ai > h:
                return None
            continue
        u, v = (l - ai) / d, (h - ai) / d
        if u > v:
            u, v = v, u
        if u > t0:
            t0 = u
        if v < t1:
            t1 = v
        if t0 > t1:
            return None
    return t0, t1


def _at(a, b, t):
    return tuple(ai + t * (bi - ai) for ai, bi in zip(a, b))


def _seg_box(a, b, lo, hi):
    r = _seg_trange(a, b, lo, hi)
    if r is None:
        return EMPTY
    t0, t1 = r
    return _at(a, b, t0) if t0 == t1 else MANY


def _seg_seg(a, b, c, d):
    u = tuple(y - x for x, y in zip(a, b))
    v = tuple(y - x for x, y in zip(c, d))
    w = tuple(y - x for x, y in zip(a, c))
    n = len(u)
    pivot = None
    for i in range(n):
        for j in range(i + 1, n):
            det = u[i] * v[j] - u[j] * v[i]
            if det != 0:
                pivot = (i, j, det)
                break
        if pivot:
            break
    if pivot is None:
        # parallel; collinear iff w is parallel to u
        for i in range(n):
            for j in range(i + 1, n):
                if u[i] * w[j] - u[j] * w[i] != 0:
                    return EMPTY
        k = next(i for i in range(n) if u[i] != 0)
        tc = w[k] / u[k]
        td = (d[k] - a[k]) / u[k]
        lo, hi = max(Fraction(0), min(tc, td)), min(Fraction(1), max(tc, td))
        if lo > hi:
            return EMPTY
        return _at(a, b, lo) if lo == hi else MANY
    i, j, det = pivot
    s = (w[i] * v[j] - v[i] * w[j]) / det
    t = (w[i] * u[j] - u[i] * w[j]) / det
    if not (0 <= s <= 1 and 0 <= t <= 1):
        return EMPTY
    p = _at(a, b, s)
    if p != _at(c, d, t):
        return EMPTY
    return p


def intersect(c1: Cell, c2: Cell):
    """``None`` if disjoint, the point if they meet in exactly one point, else ``"many"``."""
    if c1.kind == SEG and c2.kind == SEG:
        return _seg_seg(*c1.verts, *c2.verts)
    if c1.kind == SEG:
        return _seg_box(*c1.verts, *_box_of(c2))
    if c2.kind == SEG:
        return _seg_box(*c2.verts, *_box_of(c1))
    return _box_box(*_box_of(c1), *_box_of(c2))


def contains(cell: Cell, p) -> bool:
    return intersect(cell, Cell.point(p)) is not EMPTY


def _meet_outside(c1: Cell, c2: Cell, removed) -> bool:
    r = intersect(c1, c2)
    if r is EMPTY:
        return False
    return r == MANY or r not in removed


# ---------------------------------------------------------------------------
# union-find


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def labels(self):
        return [self.find(i) for i in range(len(self.parent))]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Components:
    """Component label per node (the smallest node index in its component)."""

    labels: tuple
    count: int

    def groups(self) -> dict:
        out: dict = {}
        for i, l in enumerate(self.labels):
            out.setdefault(l, []).append(i)
        return out


@dataclass(frozen=True)
class PunctureResult:
    point: tuple
    is_cut: bool
    component_count_after: int
    component_count_before: int


@dataclass(frozen=True)
class Piece:
    cell: Cell
    parent: int


class IncidenceGraph:
    """Cells of a complex and which pairs of them intersect."""

    def __init__(self, C: GeoComplex):
        self.complex = C
        self.cells = C.cells
        self.boxes = [c.bbox() for c in self.cells]
        self.adj = [set() for _ in self.cells]
        self.meet = {}  # (i, j) with i < j -> intersection result
        order = sorted(range(len(self.cells)), key=lambda i: self.boxes[i][0][0])
        for pos, i in enumerate(order):
            lo_i, hi_i = self.boxes[i]
            for j in order[pos + 1:]:
                lo_j, hi_j = self.boxes[j]
                if lo_j[0] > hi_i[0]:
                    break
                if not _boxes_meet(lo_i, hi_i, lo_j, hi_j):
                    continue
                r = intersect(self.cells[i], self.cells[j])
                if r is not EMPTY:
                    self.meet[(min(i, j), max(i, j))] = r
                    self.adj[i].add(j)
                    self.adj[j].add(i)
        self._base = None

    def edges(self):
        return sorted((i, j) for i in range(len(self.adj)) for j in self.adj[i] if i < j)

    def components(self) -> Components:
        if self._base is None:
            dsu = _DSU(len(self.cells))
            for i, nbrs in enumerate(self.adj):
                for j in nbrs:
                    dsu.union(i, j)
            labels = tuple(dsu.labels())
            self._base = Components(labels, len(set(labels)))
        return self._base

    def cells_containing(self, p) -> list:
        p = vec(p)
        out = []
        for i, (lo, hi) in enumerate(self.boxes):
            if all(l <= x <= h for l, x, h in zip(lo, p, hi)) and contains(self.cells[i], p):
                out.append(i)
        return out

    def pieces(self, removed: Iterable) -> tuple:
        """Split cells at removed points; returns (pieces, Components over pieces)."""
        removed = {vec(p) for p in removed}
        hit: dict = {}
        for p in removed:
            for i in self.cells_containing(p):
                hit.setdefault(i, []).append(p)
        pieces: list = []
        first_piece: dict = {}
        for i, cell in enumerate(self.cells):
            first_piece[i] = len(pieces)
            pts = hit.get(i)
            if not pts:
                pieces.append(Piece(cell, i))
            elif cell.kind == POINT:
                continue
            elif cell.kind == SEG:
                a, b = cell.verts
                cuts = sorted(_param(a, b, p) for p in pts)
                inner = [t for t in cuts if 0 < t < 1]
                if not inner:
                    pieces.append(Piece(cell, i))
                    continue
                ts = [Fraction(0)] + inner + [Fraction(1)]
                for t0, t1 in zip(ts, ts[1:]):
                    pieces.append(Piece(Cell.seg(_at(a, b, t0), _at(a, b, t1), cell.label, tag=cell.tag), i))
            else:
                pieces.append(Piece(cell, i))
        owner: dict = {}
        for k, pc in enumerate(pieces):
            owner.setdefault(pc.parent, []).append(k)
        dsu = _DSU(len(pieces))
        for i, nbrs in enumerate(self.adj):
            for j in nbrs:
                if j < i:
                    continue
                ki, kj = owner.get(i, []), owner.get(j, [])
                if i not in hit and j not in hit:
                    dsu.union(ki[0], kj[0])
                    continue
                whole = self.meet[(i, j)]
                for a in ki:
                    for b in kj:
                        if pieces[a].cell is self.cells[i] and pieces[b].cell is self.cells[j]:
                            joined = whole == MANY or whole not in removed
                        else:
                            joined = _meet_outside(pieces[a].cell, pieces[b].cell, removed)
                        if joined:
                            dsu.union(a, b)
        labels = tuple(dsu.labels())
        return tuple(pieces), Components(labels, len(set(labels)))

    def count_without(self, removed: Iterable) -> int:
        return self.pieces(removed)[1].count


def _param(a, b, p) -> Fraction:
    k = next(i for i in range(len(a)) if a[i] != b[i])
    return (p[k] - a[k]) / (b[k] - a[k])


def _graph(C) -> IncidenceGraph:
    return C if isinstance(C, IncidenceGraph) else IncidenceGraph(C)


def path_components(C: Union[GeoComplex, IncidenceGraph]) -> Components:
    return _graph(C).components()


def puncture(C, p, removed: Sequence = ()) -> PunctureResult:
    """Remove ``p`` (from the complex already missing ``removed``) and count components."""
    g = _graph(C)
    p = vec(p)
    removed = [vec(q) for q in removed]
    if p in removed or not g.cells_containing(p):
        raise ValueError(f"point {p} does not lie on the complex")
    before = g.count_without(removed) if removed else g.components().count
    after = g.count_without(removed + [p])
    return PunctureResult(p, after > before, after, before)


def classify_non_cut(C, candidates: Iterable, removed: Sequence = ()) -> list:
    g = _graph(C)
    return [vec(p) for p in candidates if not puncture(g, p, removed).is_cut]


# ---------------------------------------------------------------------------
# exact distances (used for the raster precondition)


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _clamp01(t):
    return min(Fraction(1), max(Fraction(0), t))


def _point_seg_sq(p, a, b):
    d = _sub(b, a)
    t = _clamp01(_dot(_sub(p, a), d) / _dot(d, d))
    q = _sub(p, _at(a, b, t))
    return _dot(q, q)


def _seg_seg_sq(a, b, c, d):
    if _seg_seg(a, b, c, d) is not EMPTY:
        return Fraction(0)
    best = min(_point_seg_sq(a, c, d), _point_seg_sq(b, c, d), _point_seg_sq(c, a, b), _point_seg_sq(d, a, b))
    u, v, w = _sub(b, a), _sub(d, c), _sub(a, c)
    uu, uv, vv, uw, vw = _dot(u, u), _dot(u, v), _dot(v, v), _dot(u, w), _dot(v, w)
    den = uu * vv - uv * uv
    if den != 0:
        s = (uv * vw - vv * uw) / den
        t = (uu * vw - uv * uw) / den
        if 0 <= s <= 1 and 0 <= t <= 1:
            q = _sub(_at(a, b, s), _at(c, d, t))
            best = min(best, _dot(q, q))
    return best


def _as_segments(cell: Cell) -> list:
    if cell.kind == POINT:
        return [(cell.verts[0], cell.verts[0])]
    if cell.kind == SEG:
        return [cell.verts]
    cs = cell.corners()
    return [(cs[k], cs[(k + 1) % 4]) for k in range(4)]


def cell_distance_sq(c1: Cell, c2: Cell) -> Fraction:
    """Exact squared Euclidean distance between two cells of a planar or
    rectangle-free complex."""
    if intersect(c1, c2) is not EMPTY:
        return Fraction(0)
    if RECT in (c1.kind, c2.kind) and c1.dim > 2:
        raise NotImplementedError("rectangle distances are only implemented in the plane")
    best = None
    for a, b in _as_segments(c1):
        for c, d in _as_segments(c2):
            if a == b and c == d:
                q = _sub(a, c)
                dd = _dot(q, q)
            elif a == b:
                dd = _point_seg_sq(a, c, d)
            elif c == d:
                dd = _point_seg_sq(c, a, b)
            else:
                dd = _seg_seg_sq(a, b, c, d)
            best = dd if best is None else min(best, dd)
    return best


# ---------------------------------------------------------------------------
# raster oracle


def _ball_box(p, radius):
    return tuple(x - radius for x in p), tuple(x + radius for x in p)


def _meets_box(cell: Cell, lo, hi) -> bool:
    if cell.kind == SEG:
        return _seg_trange(*cell.verts, lo, hi) is not None
    return _box_box(*_box_of(cell), lo, hi) is not EMPTY


def _clip_outside(cell: Cell, p, radius) -> list:
    """Parts of a segment outside the open sup-norm ball (rectangles are kept)."""
    if cell.kind != SEG:
        return [cell]
    a, b = cell.verts
    lo, hi = _ball_box(p, radius)
    r = _seg_trange(a, b, lo, hi)
    if r is None:
        return [cell]
    t0, t1 = r
    out = []
    if t0 > 0:
        out.append(Cell.seg(a, _at(a, b, t0), cell.label))
    if t1 < 1:
        out.append(Cell.seg(_at(a, b, t1), b, cell.label))
    return out


@dataclass(frozen=True)
class RasterCheck:
    ok: bool
    gap_sq: Optional[Fraction]
    reason: str = ""


def raster_precondition(C: GeoComplex, resolution: int, puncture_at=None, radius=None) -> RasterCheck:
    """Is ``resolution`` fine enough for :func:`raster_oracle` to be trusted?

    Cells in different components (per the exact analyzer) must be more than
    two voxels apart; with a puncture, only cells through the puncture point
    may enter the removed ball, and the ball must not cut a rectangle in two.
    """
    g = IncidenceGraph(C)
    removed = [vec(puncture_at)] if puncture_at is not None else []
    pieces, comps = g.pieces(removed)
    parts = []
    if puncture_at is not None:
        p = vec(puncture_at)
        radius = Fraction(radius)
        lo, hi = _ball_box(p, radius)
        for k, pc in enumerate(pieces):
            cell = pc.cell
            through = contains(cell, p)
            if cell.kind == RECT:
                if through:
                    clo, chi = cell.verts
                    for i in range(len(p)):
                        if chi[i] > clo[i] and p[i] - radius <= clo[i] and p[i] + radius >= chi[i]:
                            return RasterCheck(False, None, "puncture ball cuts a rectangle")
                parts.append((cell, comps.labels[k]))
                continue
            if not through and _meets_box(cell, lo, hi):
                return RasterCheck(False, None, f"cell {cell.label!r} passes through the puncture ball")
            for sub in _clip_outside(cell, p, radius):
                parts.append((sub, comps.labels[k]))
    else:
        parts = [(pc.cell, comps.labels[k]) for k, pc in enumerate(pieces)]
    gap = None
    if len(parts) > 1:
        lo = np.array([[float(x) for x in c.bbox()[0]] for c, _ in parts])
        hi = np.array([[float(x) for x in c.bbox()[1]] for c, _ in parts])
        lab = np.array([l for _, l in parts])
        ii, jj = np.triu_indices(len(parts), k=1)
        keep = lab[ii] != lab[jj]
        ii, jj = ii[keep], jj[keep]
        sep = np.maximum(0.0, np.maximum(lo[ii] - hi[jj], lo[jj] - hi[ii]))
        bound = (sep * sep).sum(axis=1)
        # exact distances in order of the box lower bound, stopping once no
        # remaining pair can beat the best exact value
        for k in np.argsort(bound, kind="stable"):
            if gap is not None and bound[k] > float(gap) * (1 + 1e-9) + 1e-300:
                break
            dd = cell_distance_sq(parts[ii[k]][0], parts[jj[k]][0])
            gap = dd if gap is None else min(gap, dd)
    if gap is None:
        return RasterCheck(True, None)
    d = C.dim
    need = Fraction(4 * d, resolution * resolution)  # (2/r)^2 * d
    return RasterCheck(gap > need, gap, "" if gap > need else "components closer than two voxels")


def _samples(cell: Cell, resolution: int) -> np.ndarray:
    if cell.kind == POINT:
        return np.array([[float(x) for x in cell.verts[0]]])
    if cell.kind == SEG:
        a = np.array([float(x) for x in cell.verts[0]])
        b = np.array([float(x) for x in cell.verts[1]])
        n = max(1, int(math.ceil(4 * resolution * np.max(np.abs(b - a)))))
        t = np.linspace(0.0, 1.0, n + 1)[:, None]
        return a + t * (b - a)
    lo = np.array([float(x) for x in cell.verts[0]])
    hi = np.array([float(x) for x in cell.verts[1]])
    axes = [np.linspace(l, h, max(1, int(math.ceil(2 * resolution * (h - l)))) + 1) for l, h in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def raster_oracle(C: GeoComplex, resolution: int, puncture_at=None, radius=None) -> int:
    """Count components by voxelizing the complex and flood filling.

    Independent of the exact analyzer: floating point sampling, a voxel grid
    of ``resolution`` cells per unit, and 8-/26-neighbour connectivity.
    """
    if resolution < 64 or resolution & (resolution - 1):
        raise ValueError("resolution must be a power of two >= 64")
    pts = [_samples(c, resolution) for c in C.cells]
    if not pts:
        return 0
    X = np.concatenate(pts)
    if puncture_at is not None:
        p = np.array([float(x) for x in puncture_at])
        keep = np.max(np.abs(X - p), axis=1) >= float(radius)
        X = X[keep]
    if len(X) == 0:
        return 0
    origin = X.min(axis=0) - 2.0 / resolution
    idx = np.floor((X - origin) * resolution).astype(np.int64)
    if idx.shape[1] == 2:
        grid = np.zeros(tuple(idx.max(axis=0) + 2), dtype=bool)
        grid[idx[:, 0], idx[:, 1]] = True
        _, count = ndimage.label(grid, structure=np.ones((3, 3), dtype=int))
        return int(count)
    idx = np.unique(idx, axis=0)
    span = idx.max(axis=0) + 2
    strides = np.cumprod(np.concatenate([[1], span[:-1]]))
    keys = idx @ strides
    order = np.argsort(keys)
    keys = keys[order]
    idx = idx[order]
    rows, cols = [], []
    d = idx.shape[1]
    for off in np.array(np.meshgrid(*[[-1, 0, 1]] * d, indexing="ij")).reshape(d, -1).T:
        if not off.any():
            continue
        nk = (idx + off) @ strides
        pos = np.searchsorted(keys, nk)
        pos = np.minimum(pos, len(keys) - 1)
        hit = keys[pos] == nk
        rows.append(np.nonzero(hit)[0])
        cols.append(pos[hit])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    n = len(keys)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    count, _ = connected_components(graph, directed=False)
    return int(count)
