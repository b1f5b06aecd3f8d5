"""Verification suites behind ``continua verify``.

Each suite runs the property checks of one module at a chosen scale and
collects failures.  Reports are deterministic for a given (suite, size,
seed, mutant); wall time is measured but kept out of the JSON document.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import coding, corpus, encoder, gadget, invariants, topology
from .geometry import ONE, ZERO, fmt, pl_eval, pl_image, reversal
from .io import closed_set_to_dict, pl_to_dict

SUITES = ("encoder", "invariants", "hat", "tilde", "j", "turbulence", "topology")
MUTANTS = {"encoder": ("swap",), "invariants": ("nomirror",), "turbulence": ("flip",)}
DEFAULT_SIZE = {"encoder": 6, "invariants": 6, "hat": 200, "tilde": 3, "j": 3, "turbulence": 6, "topology": 6}
DELTA_ONE = 3 - 2 * 2**0.5


@dataclass
class SuiteReport:
    suite: str
    max_size: int
    seed: int
    mutant: Optional[str] = None
    cases: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, case, expected, actual) -> None:
        self.failures.append({"case": case, "expected": expected, "actual": actual})

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "max_size": self.max_size,
            "seed": self.seed,
            "mutant": self.mutant,
            "cases": self.cases,
            "failures": self.failures,
        }


def run_suite(name: str, max_size: Optional[int] = None, seed: int = 0, mutant: Optional[str] = None) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if mutant is not None and mutant not in MUTANTS.get(name, ()):
        raise ValueError(f"suite {name!r} has no mutant {mutant!r}")
    size = DEFAULT_SIZE[name] if max_size is None else int(max_size)
    if size < 1:
        raise ValueError("max_size must be positive")
    rep = SuiteReport(name, size, seed, mutant)
    t0 = time.perf_counter()
    _RUNNERS[name](rep, size, random.Random(seed), mutant)
    rep.wall_time = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------


def _encoder(rep, size, rng, mutant):
    for n in range(1, size + 1):
        for perm in itertools.permutations(range(1, n + 1)):
            R = encoder.LinearOrderSpec.from_ranks(perm)
            removed, _ = encoder.encode_order(R)
            if mutant == "swap" and n >= 2:
                iv = list(removed.intervals)
                iv[0], iv[1] = iv[1], iv[0]
                removed = encoder.RemovedIntervals(tuple(iv))
            rep.cases += 1
            if not encoder.verify_encoding(R, removed):
                rep.fail({"ranks": list(perm)}, True, False)


def _r1_forward_only(A, B):
    return invariants.extract_T(A) == invariants.extract_T(B)


def _invariants(rep, size, rng, mutant):
    sets = corpus.grid_sets(size, 4)
    decide = _r1_forward_only if mutant == "nomirror" else invariants.decide_r1
    for A in sets:
        rep.cases += 1
        want = invariants.extract_T(A).reversed_swapped()
        got = invariants.extract_T(invariants.mirror_set(A))
        if got != want:
            rep.fail({"mirror": closed_set_to_dict(A)}, str(want), str(got))
    by_class: dict = {}
    for A in sets:
        by_class.setdefault(corpus.component_types(A) + (ZERO in A, ONE in A), []).append(A)
    pairs = [(rng.choice(sets), rng.choice(sets)) for _ in range(2000)]
    for A in rng.sample(sets, min(500, len(sets))):
        pairs.append((A, rng.choice(by_class[corpus.component_types(A) + (ZERO in A, ONE in A)])))
        pairs.append((A, invariants.mirror_set(A)))
    for A, B in pairs:
        rep.cases += 1
        verdict, truth = decide(A, B), corpus.r1_oracle(A, B)
        case = {"a": closed_set_to_dict(A), "b": closed_set_to_dict(B)}
        if verdict != truth:
            rep.fail(case, truth, verdict)
            continue
        if verdict:
            h = invariants.r1_witness(A, B)
            if h is None or pl_image(h, A) != B:
                rep.fail(case, "witness", None if h is None else pl_to_dict(h))
            if not invariants.decide_h1(A, B):
                rep.fail(case, "h1 implied by r1", False)


def _hat(rep, size, rng, mutant):
    for _ in range(size):
        f = corpus.random_pl_homeo(rng)
        A = corpus.random_closed_set(rng)
        B = pl_image(f, A)
        rep.cases += 1
        case = {"f": pl_to_dict(f), "a": closed_set_to_dict(A)}
        fhat = coding.lift_hat_homeo(f, A, B)
        if not coding.hat_cells_match(fhat, A, B):
            rep.fail(case, "hat(A) onto hat(f[A])", "cell mismatch")
        g = coding.extract_base_homeo(fhat)
        if any(pl_eval(g, x) != y for x, y in f.breakpoints) or g != f:
            rep.fail(case, pl_to_dict(f), pl_to_dict(g))


def _tilde(rep, size, rng, mutant):
    for A in corpus.grid_sets(4, 2):
        for m in range(1, size + 1):
            rep.cases += 1
            case = {"a": closed_set_to_dict(A), "m": m}
            for problem in tilde_problems(A, m):
                rep.fail(case, "tilde structure", problem)
            B = invariants.mirror_set(A)
            for f, target in ((reversal(), B), (None, A)):
                try:
                    lift = coding.lift_tilde_homeo(f or _identity(), A, target, m)
                except coding.DSetError as e:
                    rep.fail(case, "transported D-set valid", f"level {e.level}")
                    continue
                if not lift.incidence_preserved():
                    rep.fail(case, "incidence preserved", False)


def _identity():
    from .geometry import identity

    return identity()


def tilde_problems(A, m) -> list:
    """Structural properties of the tilde complex; returns a list of problems."""
    C = coding.build_tilde(A, m)
    g = topology.IncidenceGraph(C)
    out = []
    if g.components().count != 1:
        out.append(f"{g.components().count} components")
    for i in C.with_label("dset"):
        cones = [j for j in g.adj[i] if C.cells[j].label == "cone"]
        if len(cones) != 1:
            out.append(f"dset cell {i} meets {len(cones)} cone segments")
        if topology.puncture(g, C.cells[i].verts[0]).is_cut:
            out.append(f"dset point {C.cells[i].verts[0]} is a cut point")
    for c in A.components:
        for q in {c.left, c.right}:
            n = topology.path_components(coding.floor_neighbourhood(A, m, q)).count
            if n < 2:
                out.append(f"neighbourhood of floor point {fmt(q)} is connected")
    return out


def j_apex_problems(A, m) -> list:
    """The apex law for a single-component base; returns a list of problems."""
    C = coding.build_J(A, m)
    D = coding.gen_dset(A, m)
    apex = C.cells[C.with_label("apex")[0]].verts[0]
    g = topology.IncidenceGraph(C)
    out = []
    res = topology.puncture(g, apex)
    if res.component_count_after != len(D) + 1:
        out.append(f"{res.component_count_after} components after removing the apex, expected {len(D) + 1}")
    pieces, comps = g.pieces([apex])
    for root, members in comps.groups().items():
        cells = [pieces[k].cell for k in members]
        labels = sorted(c.label for c in cells)
        if any(c.label == "floor-cube" for c in cells):
            continue
        if labels != ["cone", "dset"]:
            out.append(f"component {labels} is not a single dset cone segment")
            continue
        seg = next(c for c in cells if c.label == "cone")
        base = next(c for c in cells if c.label == "dset").verts[0]
        mid = tuple((a + b) / 2 for a, b in zip(*seg.verts))
        non_cut = topology.classify_non_cut(g, [base, mid], removed=[apex])
        if non_cut != [base]:
            out.append(f"non-cut vertices {non_cut} in the segment over {base}")
    return out


def _j(rep, size, rng, mutant):
    for A in corpus.single_component_sets(12):
        for m in range(1, size + 1):
            rep.cases += 1
            for problem in j_apex_problems(A, m):
                rep.fail({"a": closed_set_to_dict(A), "m": m}, "apex law", problem)


def random_pair(rng, max_len: int, K: int):
    n = rng.randint(2, max(2, max_len))
    x = [rng.randint(-2, 2) for _ in range(n)]
    y = [v + rng.randint(-(K // 2), K // 2) for v in x]
    return gadget.IntSeq(tuple(x)), gadget.IntSeq(tuple(y))


def sigma_roundtrip_problems(x, y, K, rng) -> list:
    out = []
    F = gadget.build_F(x, K)
    pts = [p for c in F.cells if c.chart for p in c.chart]
    for _ in range(64):
        X = Fraction(rng.randint(1, 4095), 4096)
        pts.append((X, Fraction(rng.randint(-4096, 4096), 512)))
    for X, z in pts:
        back = gadget.sigma_logical(y, x, *gadget.sigma_logical(x, y, X, z))
        if back != (X, z):
            out.append(f"round trip moved ({X}, {z})")
    return out


def _turbulence(rep, size, rng, mutant):
    for case_no in range(100):
        K = (2, 4)[case_no % 2]
        x, y = random_pair(rng, size, K)
        case = {"x": list(x.values), "y": list(y.values), "window": K}
        rep.cases += 1
        r = gadget.sigma_verify(x, y, K, mutant=mutant)
        for m in r.mismatches[:5] + r.decay_violations[:5]:
            rep.fail(case, "cell bijection", m)
        for p in sigma_roundtrip_problems(x, y, K, rng)[:5]:
            rep.fail(case, "inverse round trip", p)
        same = gadget.sigma_verify(x, x, K, mutant=mutant)
        if any(v != 0 for v in same.displacement.values()):
            rep.fail({"x": list(x.values), "window": K}, "zero displacement", "moved")
    rep.cases += 1
    for problem in decay_problems(20):
        rep.fail({"decay": 20}, "decay dichotomy", problem)


def decay_problems(N: int) -> list:
    zero = [0] * N
    const = gadget.displacement_profile(zero, [1] * N)
    linear = gadget.displacement_profile(zero, list(range(1, N + 1)))
    out = []
    if any(b >= a for a, b in zip(const, const[1:])):
        out.append("constant difference profile not strictly decreasing")
    if const[N - 1] >= 0.02:
        out.append(f"entry {N} is {const[N - 1]:.6f}")
    if any(v < DELTA_ONE - 2**-20 for v in linear):
        out.append("linear difference profile drops below the delta=1 value")
    return out


def raster_problems(C, resolution: int = 1024, puncture_at=None, radius=None) -> list:
    pre = topology.raster_precondition(C, resolution, puncture_at, radius)
    if not pre.ok:
        return [f"raster precondition fails: {pre.reason}"]
    g = topology.IncidenceGraph(C)
    exact = g.count_without([puncture_at]) if puncture_at is not None else g.components().count
    raster = topology.raster_oracle(C, resolution, puncture_at, radius)
    return [] if exact == raster else [f"analyzer {exact} vs raster {raster}"]


def _topology(rep, size, rng, mutant):
    for A in rng.sample(corpus.single_component_sets(12), 6):
        m = rng.randint(1, 3)
        C = coding.build_J(A, m)
        apex = C.cells[C.with_label("apex")[0]].verts[0]
        for p, rad in ((None, None), (apex, Fraction(1, 4))):
            rep.cases += 1
            for problem in raster_problems(C, 1024, p, rad):
                rep.fail({"J": closed_set_to_dict(A), "m": m, "puncture": p is not None}, "agreement", problem)
    for _ in range(4):
        x, _ = random_pair(rng, size, 4)
        rep.cases += 1
        for problem in raster_problems(gadget.build_F(x, 4)):
            rep.fail({"x": list(x.values)}, "agreement", problem)


_RUNNERS: dict = {
    "encoder": _encoder,
    "invariants": _invariants,
    "hat": _hat,
    "tilde": _tilde,
    "j": _j,
    "turbulence": _turbulence,
    "topology": _topology,
}
