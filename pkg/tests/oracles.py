"""Independent reference computations used to freeze expected values."""

import math
from fractions import Fraction

import numpy as np

from continua.geometry import Interval, Point


def member_by_components(A, x) -> bool:
    return any(
        (c.p == x) if isinstance(c, Point) else (c.a <= x <= c.b) for c in A.components
    )


def member_of_gap(g, x) -> bool:
    lo_ok = g.a <= x if g.touches_0 and g.a == 0 else g.a < x
    hi_ok = x <= g.b if g.touches_1 and g.b == 1 else x < g.b
    return lo_ok and hi_ok


def grid_scan(A, gaps, res: int) -> list:
    """Samples k/res of [0,1] not covered exactly once by A or a gap."""
    bad = []
    for k in range(res + 1):
        x = Fraction(k, res)
        hits = int(member_by_components(A, x)) + sum(member_of_gap(g, x) for g in gaps)
        if hits != 1:
            bad.append(x)
    return bad


def interp(breakpoints, x: float) -> float:
    xs = [float(a) for a, _ in breakpoints]
    ys = [float(b) for _, b in breakpoints]
    return float(np.interp(x, xs, ys))


def logistic(z: float) -> float:
    return 1.0 / (1.0 + 2.0 ** (-z))


def max_gap_grid(delta: float, lo=-40.0, hi=40.0, n=400001) -> float:
    """Dense grid maximum of |logistic(z+delta) - logistic(z)|."""
    z = np.linspace(lo, hi, n)
    return float(np.max(np.abs(1 / (1 + 2.0 ** (-(z + delta))) - 1 / (1 + 2.0 ** (-z)))))


DELTA_ONE_CLOSED_FORM = (math.sqrt(2) - 1) ** 2
