"""The planar gadget built from an integer sequence: a T-shaped piece at the
left, stacked rectangle boundaries ("stripes") with one filled rectangle per
stripe, and curves joining neighbouring stripes.  Plus the shift map that
carries the gadget of one sequence onto the gadget of another.

Geometry is held in a logical chart (X, z) where the physical height is
y = fscale(z).  Every shift acts affinely on z, so all cell bookkeeping is
exact; fscale is applied only when physical coordinates are needed.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence

from .complex import Cell, GeoComplex
from .geometry import ONE, ZERO, fmt, rational

POS_INF = math.inf
NEG_INF = -math.inf
HALF = Fraction(1, 2)
CONNECTOR_SAMPLES = 64
_GRID = 2**48  # non-integer fscale values are rounded to this dyadic grid


@dataclass(frozen=True)
class IntSeq:
    values: tuple

    def __post_init__(self):
        vals = tuple(self.values)
        if not vals:
            raise ValueError("sequence must have at least one entry")
        for v in vals:
            if isinstance(v, bool) or int(v) != v:
                raise ValueError(f"{v!r} is not an integer")
        object.__setattr__(self, "values", tuple(int(v) for v in vals))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        """1-based access; indices past the end read as 0."""
        if n < 1:
            raise IndexError("indices start at 1")
        return self.values[n - 1] if n <= len(self.values) else 0


def seq(values) -> IntSeq:
    return values if isinstance(values, IntSeq) else IntSeq(tuple(values))


def difference_metric(x: IntSeq, y: IntSeq) -> Fraction:
    """sup_n |x_n - y_n| / n over the common prefix."""
    x, y = seq(x), seq(y)
    n = max(len(x), len(y))
    return max(Fraction(abs(x[k] - y[k]), k) for k in range(1, n + 1))


# ---------------------------------------------------------------------------
# the scale map R -> (0,1)


def _is_inf(z) -> bool:
    return isinstance(z, float) and math.isinf(z)


def fscale(z) -> Fraction:
    """1/(1 + 2^-z); exact for integer z, within 2^-48 otherwise."""
    return _fscale(z if _is_inf(z) else rational(z))


@lru_cache(maxsize=1 << 16)
def _fscale(z) -> Fraction:
    if _is_inf(z):
        return ONE if z > 0 else ZERO
    if z.denominator == 1:
        return 1 / (1 + Fraction(2) ** int(-z))
    with localcontext() as ctx:
        ctx.prec = 60
        e = Decimal(-z.numerator) / Decimal(z.denominator)
        v = 1 / (1 + Decimal(2) ** e)
        scaled = (v * _GRID).to_integral_value()
    return Fraction(int(scaled), _GRID)


FSCALE_ERROR = Fraction(1, 2**40)


def fscale_inv(y) -> object:
    """Inverse of fscale: exact when y came from fscale of a small-denominator
    rational, otherwise a 2^-48 approximation.  0 and 1 map to -inf and +inf."""
    y = rational(y)
    if y <= 0:
        return NEG_INF if y == 0 else _bad(y)
    if y >= 1:
        return POS_INF if y == 1 else _bad(y)
    r = y / (1 - y)
    for num, den, sign in ((r.numerator, r.denominator, 1), (r.denominator, r.numerator, -1)):
        if den == 1 and num & (num - 1) == 0:
            return Fraction(sign * (num.bit_length() - 1))
    with localcontext() as ctx:
        ctx.prec = 60
        z = (Decimal(r.numerator) / Decimal(r.denominator)).ln() / Decimal(2).ln()
        approx = Fraction(int((z * _GRID).to_integral_value()), _GRID)
    guess = approx.limit_denominator(4096)
    return guess if fscale(guess) == y else approx


def _bad(y):
    raise ValueError(f"height {fmt(y)} outside [0,1]")


# ---------------------------------------------------------------------------
# rectangles and the gadget complex


def stripe_x(n: int) -> tuple:
    if n < 1:
        raise ValueError("stripe index starts at 1")
    return Fraction(1, 2 * n + 1), Fraction(1, 2 * n)


def rect(n: int, k: int) -> Cell:
    """The closed rectangle R_{n,k} with its logical chart."""
    X0, X1 = stripe_x(n)
    z0, z1 = Fraction(k, n), Fraction(k + 1, n)
    return Cell.rect((X0, fscale(z0)), (X1, fscale(z1)), "stripe", tag=("rect", n, k), chart=((X0, z0), (X1, z1)))


def _chart_seg(a, b, label, tag) -> Cell:
    pa = (a[0], fscale(a[1]))
    pb = (b[0], fscale(b[1]))
    return Cell.seg(pa, pb, label, tag=tag, chart=(a, b))


def _sides(n: int, k: int, which: str) -> list:
    X0, X1 = stripe_x(n)
    z0, z1 = Fraction(k, n), Fraction(k + 1, n)
    out = []
    if "l" in which:
        out.append(_chart_seg((X0, z0), (X0, z1), "stripe", ("side", n, k, "l")))
    if "r" in which:
        out.append(_chart_seg((X1, z0), (X1, z1), "stripe", ("side", n, k, "r")))
    if "b" in which:
        out.append(_chart_seg((X0, z0), (X1, z0), "stripe", ("side", n, k, "b")))
    return out


def connector_points(x: IntSeq, n: int) -> list:
    """Logical samples (X, z) of the curve joining stripe n to stripe n+1."""
    zs = (x[n] + HALF) / n
    ze = (x[n + 1] + HALF) / (n + 1)
    pts = []
    for j in range(CONNECTOR_SAMPLES + 1):
        lam = Fraction(j, CONNECTOR_SAMPLES)
        pts.append((1 / (2 * n + 1 + lam), zs * (1 - lam) + ze * lam))
    return pts


def build_F(x, K: int = 4) -> GeoComplex:
    x = seq(x)
    N = len(x)
    if N < 2:
        raise ValueError("the gadget needs at least two stripes")
    if K < 2:
        raise ValueError("window radius must be at least 2")
    cells = [
        Cell.seg((-1, HALF), (0, HALF), "I0", tag=("arm",)),
        Cell.seg((0, 0), (0, 1), "I0", tag=("stem",)),
        Cell.point((0, HALF), "junction"),
    ]
    for n in range(1, N + 1):
        xn = x[n]
        X0, X1 = stripe_x(n)
        cells.append(rect(n, xn + 1))
        for k in range(xn - K, xn + K + 1):
            if k != xn + 1:
                cells += _sides(n, k, "lr")
        for k in range(xn - K, xn + K + 2):
            if k not in (xn + 1, xn + 2):
                cells += _sides(n, k, "b")
        lo, hi = Fraction(xn - K, n), Fraction(xn + K + 1, n)
        for X, s in ((X0, "l"), (X1, "r")):
            cells.append(_chart_seg((X, NEG_INF), (X, lo), "rail", ("rail", n, s, "lo")))
            cells.append(_chart_seg((X, hi), (X, POS_INF), "rail", ("rail", n, s, "hi")))
        cells.append(_chart_seg((X0, NEG_INF), (X1, NEG_INF), "rail", ("rung", n, "lo")))
        cells.append(_chart_seg((X0, POS_INF), (X1, POS_INF), "rail", ("rung", n, "hi")))
    for n in range(1, N):
        pts = connector_points(x, n)
        for j, (a, b) in enumerate(zip(pts, pts[1:])):
            cells.append(_chart_seg(a, b, "connector", ("connector", n, j)))
    meta = {
        "kind": "gadget",
        "seq": list(x.values),
        "window": K,
        "fscale": "1/(1+2^-z)",
        "rails": "truncation stand-in for the closure beyond the window",
    }
    return GeoComplex(2, tuple(cells), meta)


def stripe_cells(C: GeoComplex) -> list:
    return [i for i, c in enumerate(C.cells) if c.label in ("stripe", "rail", "connector")]


def i0_cells(C: GeoComplex) -> list:
    return C.with_label("I0", "junction")


# ---------------------------------------------------------------------------
# the shift map


@dataclass(frozen=True)
class Region:
    kind: str  # "stripe", "gap", "outer", "fixed"
    n: int = 0
    lam: Fraction = Fraction(0)


def region_of(X) -> Region:
    X = rational(X)
    if X <= 0 or X >= 1:
        return Region("fixed")
    t = 1 / X
    n = math.floor(t / 2)
    r = t - 2 * n
    if n == 0:
        return Region("outer", 0, t - 1)
    if r <= 1:
        return Region("stripe", n)
    return Region("gap", n, r - 1)


def shift_at(x: IntSeq, y: IntSeq, X, sign: int = 1):
    """The z-translation applied by the shift map on the vertical line at X."""
    x, y = seq(x), seq(y)

    def d(n):
        return sign * (y[n] - x[n])

    reg = region_of(X)
    if reg.kind == "fixed":
        return Fraction(0)
    if reg.kind == "stripe":
        return Fraction(d(reg.n), reg.n)
    if reg.kind == "outer":
        return d(1) * reg.lam
    n, lam = reg.n, reg.lam
    return Fraction(d(n), n) * (1 - lam) + Fraction(d(n + 1), n + 1) * lam


def sigma_logical(x, y, X, z, sign: int = 1) -> tuple:
    X = rational(X)
    if _is_inf(z):
        return X, z
    return X, rational(z) + shift_at(x, y, X, sign)


def sigma_eval(x, y, p, sign: int = 1) -> tuple:
    """The shift map on physical points of [-1,1] x [0,1]; identity off (0,1)^2."""
    X, Y = (rational(c) for c in p)
    if not (-1 <= X <= 1 and 0 <= Y <= 1):
        raise ValueError(f"point ({fmt(X)}, {fmt(Y)}) outside [-1,1] x [0,1]")
    if X <= 0 or X == 1 or Y in (ZERO, ONE) or shift_at(x, y, X, sign) == 0:
        return X, Y
    _, z = sigma_logical(x, y, X, fscale_inv(Y), sign)
    return X, fscale(z)


def _chart_key(label, chart):
    a, b = chart
    return (label,) + tuple(sorted([a, b], key=_zkey))


def _zkey(pt):
    X, z = pt
    return (X, z if not _is_inf(z) else (10**9 if z > 0 else -(10**9)))


def _shift_tag(tag, x, y, sign):
    """The tag a stripe cell should carry after shifting."""
    if tag and tag[0] in ("rect", "side"):
        n, k = tag[1], tag[2]
        return (tag[0], n, k + sign * (y[n] - x[n])) + tag[3:]
    return tag


@dataclass
class SigmaReport:
    x: tuple
    y: tuple
    window: int
    cell_map: list = field(default_factory=list)  # (source tag, target tag)
    mismatches: list = field(default_factory=list)
    displacement: dict = field(default_factory=dict)  # stripe n -> sup over corners
    bounds: dict = field(default_factory=dict)
    connector_displacement: dict = field(default_factory=dict)
    decay_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.decay_violations


def sigma_verify(x, y, K: int = 4, tol: float = 1e-9, mutant: Optional[str] = None) -> SigmaReport:
    """Check that the shift map carries build_F(x) onto build_F(y) cell by cell.

    ``mutant="flip"`` negates the shift (a negative control)."""
    x, y = seq(x), seq(y)
    if len(x) != len(y):
        raise ValueError("sequences must have the same length")
    sign = -1 if mutant == "flip" else 1
    Fx, Fy = build_F(x, K), build_F(y, K)
    index = {}
    for j, c in enumerate(Fy.cells):
        key = _chart_key(c.label, c.chart) if c.chart else (c.label, c.verts)
        index[key] = j
    rep = SigmaReport(x.values, y.values, K)
    hit = set()
    for i, c in enumerate(Fx.cells):
        if c.chart is None:
            key = (c.label, c.verts)
        else:
            moved = tuple(sigma_logical(x, y, X, z, sign) for X, z in c.chart)
            key = _chart_key(c.label, moved)
        j = index.get(key)
        if j is None:
            rep.mismatches.append({"cell": list(c.tag) or c.label, "reason": "image is not a cell of the target"})
            continue
        want = _shift_tag(c.tag, x, y, 1)
        got = Fy.cells[j].tag
        if c.label != "connector" and got != want:
            rep.mismatches.append({"cell": list(c.tag), "reason": f"landed on {list(got)}, expected {list(want)}"})
        if j in hit:
            rep.mismatches.append({"cell": list(c.tag), "reason": "two cells map to one"})
        hit.add(j)
        if c.tag and c.tag[0] == "rect":
            rep.cell_map.append((c.tag, got))
        if c.chart is not None:
            disp = max(abs(fscale(sigma_logical(x, y, X, z, sign)[1]) - fscale(z)) for X, z in c.chart)
            n = c.tag[1]
            store = rep.connector_displacement if c.label == "connector" else rep.displacement
            store[n] = max(store.get(n, Fraction(0)), disp)
    if len(hit) != len(Fy.cells):
        rep.mismatches.append({"cell": None, "reason": f"{len(Fy.cells) - len(hit)} target cells not covered"})
    prof = displacement_profile(x, y)
    for n, b in enumerate(prof, start=1):
        rep.bounds[n] = b
    slack = float(FSCALE_ERROR) * 2 + tol
    for n, v in sorted(rep.displacement.items()):
        if float(v) > rep.bounds[n] + slack:
            rep.decay_violations.append({"stripe": n, "displacement": float(v), "bound": rep.bounds[n]})
    for n, v in sorted(rep.connector_displacement.items()):
        b = max(rep.bounds[n], rep.bounds.get(n + 1, 0.0))
        if float(v) > b + slack:
            rep.decay_violations.append({"connector": n, "displacement": float(v), "bound": b})
    return rep


# ---------------------------------------------------------------------------
# displacement bounds


def _logistic_gap(z: float, delta: float) -> float:
    return abs(1.0 / (1.0 + 2.0 ** (-(z + delta))) - 1.0 / (1.0 + 2.0 ** (-z)))


def max_shift_displacement(delta) -> float:
    """sup_z |fscale(z + delta) - fscale(z)|, by ternary search (unimodal in z)."""
    delta = float(delta)
    if delta == 0:
        return 0.0
    lo, hi = -64.0 - abs(delta), 64.0 + abs(delta)
    while hi - lo > 2.0**-30:
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if _logistic_gap(m1, delta) < _logistic_gap(m2, delta):
            lo = m1
        else:
            hi = m2
    return _logistic_gap((lo + hi) / 2, delta)


def displacement_profile(x, y) -> list:
    x, y = seq(x), seq(y)
    if len(x) != len(y):
        raise ValueError("sequences must have the same length")
    return [max_shift_displacement(Fraction(y[n] - x[n], n)) for n in range(1, len(x) + 1)]
