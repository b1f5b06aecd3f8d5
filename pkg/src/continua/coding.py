"""Coding continua built over closed subsets of [0,1], truncated to finite
depth, and the homeomorphism extensions that move between them.

Complexes produced here:

* ``build_I``     the base set on the floor plus a D-set of isolated points above it
* ``build_fan``   cone over the floor/D-set points of a complex, one dimension up
* ``build_tilde`` the cone over ``build_I`` (the continuum coding the set's homeomorphism type)
* ``build_J``     the floor interval with a cone over D-set and base set only
* ``build_hat``   floor segment plus a cylinder over a rescaled copy of the set
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .complex import POINT, RECT, SEG, Cell, GeoComplex, vec
from .geometry import (
    ONE,
    ZERO,
    ClosedSet1D,
    Interval,
    PLHomeo1D,
    Point,
    fmt,
    pl_eval,
    pl_image,
    rational,
)
from .topology import intersect

THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)
HALF = Fraction(1, 2)


class DSetError(ValueError):
    """A D-set fails the net condition; ``level`` is the first failing level."""

    def __init__(self, msg, level=None):
        super().__init__(msg)
        self.level = level


# ---------------------------------------------------------------------------
# D-sets


@dataclass(frozen=True)
class DSet:
    base: ClosedSet1D
    depth: int
    points: tuple  # (position, height), height = 1/2^k

    def level(self, k: int) -> list:
        h = Fraction(1, 2**k)
        return [pos for pos, ht in self.points if ht == h]

    def __len__(self):
        return len(self.points)


def gen_dset(A: ClosedSet1D, m: int) -> DSet:
    """Dyadic grid of denominator 2^k snapped to A, for k = 1..m."""
    if m < 1:
        raise ValueError("depth must be at least 1")
    pts = []
    for k in range(1, m + 1):
        h = Fraction(1, 2**k)
        seen = set()
        for j in range(2**k + 1):
            pos = A.nearest(Fraction(j, 2**k))
            if pos not in seen:
                seen.add(pos)
                pts.append((pos, h))
    return DSet(A, m, tuple(pts))


def _cover_radius(component, positions: Sequence[Fraction]) -> Fraction:
    """sup over the component of the distance to the nearest position."""
    lo, hi = component.left, component.right
    ps = sorted(positions)

    def dist(x):
        return min(abs(x - p) for p in ps)

    cands = [lo, hi]
    for p, q in zip(ps, ps[1:]):
        mid = (p + q) / 2
        if lo <= mid <= hi:
            cands.append(mid)
    return max(dist(x) for x in cands)


def net_defect(D: DSet) -> Optional[int]:
    """First level k whose positions are not a 1/2^k-net of the base (None if valid)."""
    for k in range(1, D.depth + 1):
        ps = D.level(k)
        if not ps:
            return k
        r = Fraction(1, 2**k)
        if any(p not in D.base for p in ps):
            return k
        if any(_cover_radius(c, ps) > r for c in D.base.components):
            return k
    if len(set(D.points)) != len(D.points):
        return D.depth
    return None


# ---------------------------------------------------------------------------
# complexes


def build_I(A: ClosedSet1D, m: int, dset: Optional[DSet] = None) -> GeoComplex:
    D = dset if dset is not None else gen_dset(A, m)
    cells = []
    for c in A.components:
        if isinstance(c, Point):
            cells.append(Cell.point((c.p, 0), "floor", tag=("base", c.p)))
        else:
            cells.append(Cell.seg((c.a, 0), (c.b, 0), "floor", tag=("base", c.a, c.b)))
    for pos, h in D.points:
        cells.append(Cell.point((pos, h), "dset", tag=("base", pos, h)))
    return GeoComplex(2, tuple(cells), {"kind": "I", "depth": D.depth})


def default_apex(d: int) -> tuple:
    """Apex for a cone over a d-dimensional complex: (1/2, ..., 1/2, 1)."""
    return tuple([HALF] * d + [ONE])


def build_fan(C: GeoComplex, apex=None) -> GeoComplex:
    apex = vec(apex) if apex is not None else default_apex(C.dim)
    if len(apex) != C.dim + 1:
        raise ValueError("apex must have one more coordinate than the complex")
    if apex[-1] <= 0:
        raise ValueError("apex must sit above the floor (last coordinate > 0)")
    if any(x < 0 or x > 1 for x in apex):
        raise ValueError("apex must lie in the unit cube")
    cells = [c.lifted() for c in C.cells]
    seen = set()
    cones = []
    for c in C.cells:
        if c.label not in ("floor", "dset"):
            continue
        for v in c.corners():
            base = v + (ZERO,)
            if base not in seen:
                seen.add(base)
                cones.append(Cell.seg(base, apex, "cone", tag=("from", c.label) + c.tag))
    cells += cones
    cells.append(Cell.point(apex, "apex"))
    meta = dict(C.meta)
    meta["apex"] = [fmt(x) for x in apex]
    return GeoComplex(C.dim + 1, tuple(cells), meta)


def build_tilde(A: ClosedSet1D, m: int, apex=None, dset: Optional[DSet] = None) -> GeoComplex:
    C = build_fan(build_I(A, m, dset), apex)
    C.meta["kind"] = "tilde"
    return C


def build_J(A: ClosedSet1D, m: int, apex=None, dset: Optional[DSet] = None) -> GeoComplex:
    D = dset if dset is not None else gen_dset(A, m)
    apex = vec(apex) if apex is not None else default_apex(2)
    if apex[-1] <= 0:
        raise ValueError("apex must sit above the floor (last coordinate > 0)")
    cells = [Cell.seg((0, 0, 0), (1, 0, 0), "floor-cube")]
    for pos, h in D.points:
        cells.append(Cell.point((pos, h, 0), "dset", tag=("base", pos, h)))
    for pos, h in D.points:
        cells.append(Cell.seg((pos, h, 0), apex, "cone", tag=("from", "dset", "base", pos, h)))
    for c in A.components:
        ends = (c.p,) if isinstance(c, Point) else (c.a, c.b)
        for x in ends:
            cells.append(Cell.seg((x, 0, 0), apex, "cone", tag=("from", "floor", "base", x)))
    cells.append(Cell.point(apex, "apex"))
    return GeoComplex(3, tuple(cells), {"kind": "J", "depth": D.depth, "apex": [fmt(x) for x in apex]})


def build_hat(A: ClosedSet1D) -> GeoComplex:
    cells = [Cell.seg((THIRD, 0), (TWO_THIRDS, 0), "floor")]
    for c in A.components:
        if isinstance(c, Point):
            x = (c.p + 1) / 3
            cells.append(Cell.seg((x, 0), (x, THIRD), "cylinder"))
        else:
            cells.append(Cell.rect(((c.a + 1) / 3, 0), ((c.b + 1) / 3, THIRD), "cylinder"))
    return GeoComplex(2, tuple(cells), {"kind": "hat"})


# ---------------------------------------------------------------------------
# evaluable homeomorphisms


@dataclass(frozen=True)
class EvaluableHomeo:
    """A homeomorphism of a box given by a function on rational points.

    ``error_bound`` is 0 for maps evaluated exactly.  ``kinks`` optionally
    lists, per axis, coordinates where the map may fail to be affine; base
    map extraction uses them to recover piecewise-linear maps exactly.
    """

    dim: int
    fn: Callable = field(repr=False)
    inverse_fn: Optional[Callable] = field(default=None, repr=False)
    domain: tuple = ()
    error_bound: Fraction = Fraction(0)
    kinks: tuple = ()
    name: str = ""

    def __post_init__(self):
        if not self.domain:
            object.__setattr__(self, "domain", (tuple([ZERO] * self.dim), tuple([ONE] * self.dim)))

    def __call__(self, p) -> tuple:
        p = vec(p)
        if len(p) != self.dim:
            raise ValueError(f"expected a point of dimension {self.dim}")
        lo, hi = self.domain
        if any(x < l or x > h for x, l, h in zip(p, lo, hi)):
            raise ValueError(f"{p} outside the domain box")
        return tuple(self.fn(p))

    def inverse(self) -> "EvaluableHomeo":
        if self.inverse_fn is None:
            raise ValueError(f"{self.name or 'map'} has no declared inverse")
        return EvaluableHomeo(self.dim, self.inverse_fn, self.fn, self.domain, self.error_bound, (), self.name + "^-1")


def identity_homeo(dim: int, domain=()) -> EvaluableHomeo:
    return EvaluableHomeo(dim, lambda p: p, lambda p: p, domain, name="id")


def product_homeo(maps: Sequence[PLHomeo1D], lo=ZERO, hi=ONE) -> EvaluableHomeo:
    """Axis-wise product of PL maps, each rescaled from [0,1] onto [lo, hi]."""
    lo, hi = rational(lo), rational(hi)
    w = hi - lo
    from .geometry import pl_invert

    invs = [pl_invert(f) for f in maps]

    def make(fs):
        return lambda p: tuple(lo + w * pl_eval(f, (x - lo) / w) for f, x in zip(fs, p))

    n = len(maps)
    kinks = tuple(tuple(lo + w * x for x in f.inputs) for f in maps)
    box = (tuple([lo] * n), tuple([hi] * n))
    return EvaluableHomeo(n, make(maps), make(invs), box, kinks=kinks, name="product")


def swap_homeo(lo=THIRD, hi=TWO_THIRDS) -> EvaluableHomeo:
    box = ((rational(lo),) * 2, (rational(hi),) * 2)
    return EvaluableHomeo(2, lambda p: (p[1], p[0]), lambda p: (p[1], p[0]), box, name="swap")


def extend_homeo_1d(f: PLHomeo1D) -> PLHomeo1D:
    """Conjugate f into [1/3, 2/3] and extend by x or 1-x outside."""
    inner = [((x + 1) / 3, (y + 1) / 3) for x, y in f.breakpoints]
    if f.preserving:
        pairs = [(ZERO, ZERO)] + inner + [(ONE, ONE)]
    else:
        pairs = [(ZERO, ONE)] + inner + [(ONE, ZERO)]
    return PLHomeo1D(tuple(pairs), f.orientation)


def _sup(q) -> Fraction:
    return max(abs(x) for x in q)


def _inner_boundary_samples(d: int) -> list:
    """Deterministic sample of the boundary of [1/3,2/3]^d."""
    grid = [THIRD + Fraction(j, 24) for j in range(9)]  # 1/3 .. 2/3
    pts = []
    for axis in range(d):
        for side in (THIRD, TWO_THIRDS):
            for j, g in enumerate(grid):
                p = [grid[(j * (i + 3) + i) % len(grid)] for i in range(d)]
                p[(axis + 1) % d] = g
                p[axis] = side
                pts.append(tuple(p))
    return pts


def radial_extend(phi: EvaluableHomeo) -> EvaluableHomeo:
    """Extend a homeomorphism of [1/3,2/3]^d to [0,1]^d along sup-norm rays.

    In coordinates q = 2(p - c) centred at c = (1/2,...,1/2) the inner cube
    is the sup-norm ball of radius 1/3.  Inside it the map is phi; outside,
    a point of radius r with direction u (|u| = 1/3) goes to radius r in
    direction phi(u), so sup-norm radius is preserved beyond the inner cube.
    """
    d = phi.dim
    if d < 2:
        raise ValueError("radial extension is for dimension >= 2; use extend_homeo_1d")
    lo, hi = phi.domain
    if any(l != THIRD for l in lo) or any(h != TWO_THIRDS for h in hi):
        raise ValueError("phi must be defined on [1/3,2/3]^d")
    for p in _inner_boundary_samples(d):
        img = phi(p)
        q = tuple(2 * (x - HALF) for x in img)
        if _sup(q) != THIRD:
            raise ValueError(f"phi does not send boundary point {p} to the boundary")

    def extend(g):
        def fn(p):
            q = tuple(2 * (x - HALF) for x in p)
            r = _sup(q)
            if r <= THIRD:
                return tuple(g(p))
            u = tuple(HALF + x * THIRD / r / 2 for x in q)
            v = tuple(2 * (x - HALF) for x in g(u))
            return tuple(HALF + 3 * r * x / 2 for x in v)

        return fn

    inv = extend(phi.inverse_fn) if phi.inverse_fn is not None else None
    return EvaluableHomeo(d, extend(phi.fn), inv, error_bound=phi.error_bound, name=f"radial({phi.name})")


def _cone_phi(f: EvaluableHomeo) -> EvaluableHomeo:
    """x -> (f(3x - 1) + 1)/3 on [1/3,2/3]^n."""

    def conj(g):
        return lambda p: tuple((y + 1) / 3 for y in g(tuple(3 * x - 1 for x in p)))

    n = f.dim
    inv = conj(f.inverse_fn) if f.inverse_fn is not None else None
    box = ((THIRD,) * n, (TWO_THIRDS,) * n)
    return EvaluableHomeo(n, conj(f.fn), inv, box, f.error_bound, name=f"phi({f.name})")


def lift_hat_homeo(f: Union[PLHomeo1D, EvaluableHomeo], A: Optional[ClosedSet1D] = None,
                   B: Optional[ClosedSet1D] = None) -> EvaluableHomeo:
    """(x, t) -> (f'(x), t) where f' extends f from the middle third outwards."""
    if isinstance(f, PLHomeo1D):
        if A is not None and B is not None and pl_image(f, A) != B:
            raise ValueError(f"the map does not carry {A!r} onto {B!r}")
        fp = extend_homeo_1d(f)
        from .geometry import pl_invert

        fpi = pl_invert(fp)
        kinks = (tuple(fp.inputs), ())
        return EvaluableHomeo(
            2,
            lambda p: (pl_eval(fp, p[0]), p[1]),
            lambda p: (pl_eval(fpi, p[0]), p[1]),
            kinks=kinks,
            name="hat-lift",
        )
    fp = radial_extend(_cone_phi(f))
    n = f.dim

    def fwd(g):
        return lambda p: tuple(g(p[:n])) + (p[n],)

    inv = fwd(fp.inverse_fn) if fp.inverse_fn is not None else None
    return EvaluableHomeo(n + 1, fwd(fp.fn), inv, error_bound=fp.error_bound, name="hat-lift")


def image_complex(h: EvaluableHomeo, C: GeoComplex) -> GeoComplex:
    """Push cells through a map that is monotone along each axis (segments and
    rectangles go to the segment/rectangle spanned by the images of their corners)."""
    cells = []
    for c in C.cells:
        if c.kind == POINT:
            cells.append(Cell.point(h(c.verts[0]), c.label, tag=c.tag))
        elif c.kind == SEG:
            cells.append(Cell.seg(h(c.verts[0]), h(c.verts[1]), c.label, tag=c.tag))
        else:
            imgs = [h(v) for v in c.corners()]
            lo = tuple(map(min, *imgs))
            hi = tuple(map(max, *imgs))
            cells.append(Cell.rect(lo, hi, c.label, tag=c.tag))
    return GeoComplex(C.dim, tuple(cells), dict(C.meta))


def hat_cells_match(h: EvaluableHomeo, A: ClosedSet1D, B: ClosedSet1D) -> bool:
    return image_complex(h, build_hat(A)).shapes() == build_hat(B).shapes()


def extract_base_homeo(fhat: EvaluableHomeo, samples: int = 2**10) -> PLHomeo1D:
    """Read off x -> 3 * fhat((x+1)/3, 0)[0] - 1 on the floor of the cylinder."""
    if fhat.dim != 2:
        raise ValueError("base extraction is implemented for maps of the square")
    ends = {fhat((THIRD, ZERO)), fhat((TWO_THIRDS, ZERO))}
    if ends != {(THIRD, ZERO), (TWO_THIRDS, ZERO)}:
        raise ValueError("map does not preserve the floor segment [1/3,2/3] x {0}")
    xs = {Fraction(j, samples) for j in range(samples + 1)}
    if fhat.kinks:
        xs |= {3 * k - 1 for k in fhat.kinks[0] if THIRD <= k <= TWO_THIRDS}
    pairs = []
    for x in sorted(xs):
        u, t = fhat(((x + 1) / 3, ZERO))
        if t != 0 or not THIRD <= u <= TWO_THIRDS:
            raise ValueError(f"map moves floor point x={fmt(x)} off the floor")
        pairs.append((x, 3 * u - 1))
    return PLHomeo1D.from_pairs(pairs)


# ---------------------------------------------------------------------------
# transporting the tilde complex along a homeomorphism of the base


@dataclass(frozen=True)
class TildeLift:
    source: GeoComplex
    target: GeoComplex
    mapping: tuple  # mapping[i] = index in target of the image of source cell i

    def incidence_preserved(self) -> bool:
        src, tgt, m = self.source.cells, self.target.cells, self.mapping
        n = len(src)
        for i in range(n):
            for j in range(i + 1, n):
                a = intersect(src[i], src[j]) is not None
                b = intersect(tgt[m[i]], tgt[m[j]]) is not None
                if a != b:
                    return False
        return True


def transport_dset(f: PLHomeo1D, D: DSet, B: ClosedSet1D) -> DSet:
    moved = DSet(B, D.depth, tuple((pl_eval(f, pos), h) for pos, h in D.points))
    bad = net_defect(moved)
    if bad is not None:
        raise DSetError(f"transported D-set fails the net condition at level {bad}", bad)
    return moved


def _cell_key(c: Cell, f: Optional[PLHomeo1D] = None):
    """Identity of a tilde-complex cell by role and base coordinates."""
    move = (lambda x: pl_eval(f, x)) if f is not None else (lambda x: x)
    if c.label == "apex":
        return ("apex",)
    if c.label == "dset":
        return ("dset", move(c.verts[0][0]), c.verts[0][1])
    if c.label == "floor":
        if c.kind == POINT:
            return ("floor", move(c.verts[0][0]))
        return ("floor",) + tuple(sorted((move(c.verts[0][0]), move(c.verts[1][0]))))
    if c.label == "cone":
        base = c.verts[0]
        return ("cone", move(base[0]), base[1])
    raise ValueError(f"unexpected cell label {c.label!r}")


def lift_tilde_homeo(f: PLHomeo1D, A: ClosedSet1D, B: ClosedSet1D, m: int) -> TildeLift:
    if pl_image(f, A) != B:
        raise ValueError(f"the map does not carry {A!r} onto {B!r}")
    D = gen_dset(A, m)
    source = build_tilde(A, m, dset=D)
    target = build_tilde(B, m, dset=transport_dset(f, D, B))
    index = {_cell_key(c): k for k, c in enumerate(target.cells)}
    mapping = tuple(index[_cell_key(c, f)] for c in source.cells)
    if sorted(mapping) != list(range(len(target.cells))):
        raise AssertionError("cell correspondence is not a bijection")
    return TildeLift(source, target, mapping)


def floor_neighbourhood(A: ClosedSet1D, m: int, q, apex=None, dset: Optional[DSet] = None) -> GeoComplex:
    """Truncated neighbourhood of the floor point (q, 0) in the tilde complex.

    Uses the cone parameter: base points of I(A) within sup-distance 1/2^m
    of (q, 0), each with the initial part of its cone segment up to
    parameter 1/2^(m+1).  Floor intervals are clipped to the window.
    """
    q = rational(q)
    if q not in A:
        raise ValueError(f"{fmt(q)} is not a point of the base set")
    D = dset if dset is not None else gen_dset(A, m)
    apex = vec(apex) if apex is not None else default_apex(2)
    r = Fraction(1, 2**m)
    eps = Fraction(1, 2 ** (m + 1))
    cells = []

    def stub(base, label, tag):
        b = base + (ZERO,)
        tip = tuple(x + eps * (y - x) for x, y in zip(b, apex))
        cells.append(Cell.seg(b, tip, label, tag=tag))

    for c in A.components:
        lo, hi = max(c.left, q - r), min(c.right, q + r)
        if lo > hi:
            continue
        if lo == hi:
            cells.append(Cell.point((lo, 0, 0), "floor"))
        else:
            cells.append(Cell.seg((lo, 0, 0), (hi, 0, 0), "floor"))
        for x in {c.left, c.right}:
            if abs(x - q) <= r:
                stub((x, ZERO), "cone", ("from", "floor", x))
    for pos, h in D.points:
        if abs(pos - q) <= r and h <= r:
            cells.append(Cell.point((pos, h, 0), "dset"))
            stub((pos, h), "cone", ("from", "dset", pos, h))
    return GeoComplex(3, tuple(cells), {"kind": "floor-neighbourhood", "point": fmt(q), "depth": m})
