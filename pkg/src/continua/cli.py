"""Command line interface.

Exit codes: 0 success, 1 a checked property does not hold, 2 bad input.
Machine-readable output goes to stdout (or --out), a one-line summary to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import coding, encoder, gadget, invariants, topology
from . import io as jio
from .geometry import pl_image
from .svg import render_svg
from .suites import SUITES, run_suite

OK, VIOLATION, INPUT_ERROR = 0, 1, 2


class Violation(Exception):
    pass


def _emit(doc_or_text, out=None) -> None:
    text = doc_or_text if isinstance(doc_or_text, str) else jio.dumps(doc_or_text)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------


def cmd_encode_order(a) -> int:
    R = jio.order_from_dict(jio.read_json(a.order))
    removed, A = encoder.encode_order(R)
    if a.intervals:
        Path(a.intervals).write_text(jio.dumps(jio.intervals_to_dict(removed)))
    _emit(jio.closed_set_to_dict(A), a.out)
    ok = encoder.verify_encoding(R, removed)
    _say(f"encoded {R.n}-element order: {len(A)} components, verified={ok}")
    return OK if ok else VIOLATION


def cmd_invariants(a) -> int:
    A = jio.closed_set_from_dict(jio.read_json(a.set))
    T, S, M = invariants.extract_T(A), invariants.extract_S(A), invariants.extract_M(A)
    _emit({
        "pattern": str(T),
        "entries": [{"kind": e.kind, "touches_0": e.touches_0, "touches_1": e.touches_1} for e in T],
        "S": {"point_count": S.point_count, "interval_count": S.interval_count},
        "M": [str(M.forward), str(M.mirrored)],
    })
    _say(f"{T}  S=({S.point_count},{S.interval_count})")
    return OK


def cmd_decide(a) -> int:
    A = jio.closed_set_from_dict(jio.read_json(a.a))
    B = jio.closed_set_from_dict(jio.read_json(a.b))
    if a.relation == "h1":
        holds = invariants.decide_h1(A, B)
        _emit({"relation": "h1", "holds": holds})
    else:
        h = invariants.r1_witness(A, B)
        holds = h is not None
        doc = {"relation": "r1", "holds": holds}
        if holds:
            doc["witness"] = jio.pl_to_dict(h)
        _emit(doc)
    _say(f"{a.relation}: {'holds' if holds else 'does not hold'}")
    return OK if holds else VIOLATION


def _apex(text):
    return jio.parse_point(text) if text else None


def cmd_build(a) -> int:
    kind = a.kind
    if kind == "fan" and a.input:
        C = coding.build_fan(jio.complex_from_dict(jio.read_json(a.input)), _apex(a.apex))
    else:
        if not a.set:
            raise jio.FormatError("--set is required")
        A = jio.closed_set_from_dict(jio.read_json(a.set))
        if kind == "hat":
            C = coding.build_hat(A)
        else:
            if a.depth is None or a.depth < 1:
                raise jio.FormatError("--depth must be a positive integer")
            if kind == "i":
                C = coding.build_I(A, a.depth)
            elif kind in ("fan", "tilde"):
                C = coding.build_tilde(A, a.depth, _apex(a.apex))
            else:
                C = coding.build_J(A, a.depth, _apex(a.apex))
    _emit(jio.complex_to_dict(C), a.out)
    _say(f"built {kind}: {len(C)} cells in dimension {C.dim}")
    return OK


def cmd_lift(a) -> int:
    f = jio.pl_from_dict(jio.read_json(a.map))
    A = jio.closed_set_from_dict(jio.read_json(a.a))
    B = jio.closed_set_from_dict(jio.read_json(a.b))
    if pl_image(f, A) != B:
        raise jio.FormatError("the map does not carry A onto B")
    if a.kind == "hat":
        fhat = coding.lift_hat_homeo(f, A, B)
        image = coding.image_complex(fhat, coding.build_hat(A))
        match = image.shapes() == coding.build_hat(B).shapes()
        base = coding.extract_base_homeo(fhat)
        ok = match and base == f
        doc = {"kind": "hat", "cells_match": match, "base_map": jio.pl_to_dict(base),
               "image": jio.complex_to_dict(image)}
    else:
        if a.depth is None or a.depth < 1:
            raise jio.FormatError("--depth must be a positive integer")
        try:
            lift = coding.lift_tilde_homeo(f, A, B, a.depth)
        except coding.DSetError as e:
            _emit({"kind": "tilde", "error": str(e), "level": e.level}, a.out)
            _say(str(e))
            return VIOLATION
        ok = lift.incidence_preserved()
        doc = {"kind": "tilde", "incidence_preserved": ok, "mapping": list(lift.mapping),
               "target": jio.complex_to_dict(lift.target)}
    _emit(doc, a.out)
    _say(f"lift {a.kind}: {'ok' if ok else 'FAILED'}")
    return OK if ok else VIOLATION


def cmd_analyze(a) -> int:
    C = jio.complex_from_dict(jio.read_json(a.input))
    g = topology.IncidenceGraph(C)
    doc = {"components": g.components().count}
    if a.op == "puncture":
        if not a.point:
            raise jio.FormatError("--point is required for puncture")
        doc["punctures"] = []
        for text in a.point:
            p = jio.parse_point(text)
            if len(p) != C.dim:
                raise jio.FormatError(f"point {text!r} has the wrong dimension")
            r = topology.puncture(g, p)
            doc["punctures"].append({"point": [jio.fmt(x) for x in p], "is_cut": r.is_cut,
                                     "after": r.component_count_after})
    _emit(doc, a.out)
    _say(f"{doc['components']} path components")
    return OK


def cmd_turbulence(a) -> int:
    if a.action == "build":
        x = jio.intseq_from_dict(jio.read_json(a.seq))
        C = gadget.build_F(x, a.window)
        _emit(jio.complex_to_dict(C), a.out)
        _say(f"gadget for {list(x.values)}: {len(C)} cells")
        return OK
    x = jio.intseq_from_dict(jio.read_json(a.x))
    y = jio.intseq_from_dict(jio.read_json(a.y))
    r = gadget.sigma_verify(x, y, a.window, a.tol)
    doc = {
        "x": list(r.x), "y": list(r.y), "window": r.window, "ok": r.ok,
        "cell_map": [{"from": list(s), "to": list(t)} for s, t in r.cell_map],
        "mismatches": r.mismatches,
        "displacement": {str(n): float(v) for n, v in sorted(r.displacement.items())},
        "bounds": {str(n): v for n, v in sorted(r.bounds.items())},
        "decay_violations": r.decay_violations,
    }
    _emit(doc, a.out)
    _say(f"sigma: {len(r.cell_map)} rectangles mapped, {len(r.mismatches)} mismatches")
    return OK if r.ok else VIOLATION


def cmd_render(a) -> int:
    C = jio.complex_from_dict(jio.read_json(a.input))
    _emit(render_svg(C, a.samples), a.out)
    _say(f"rendered {len(C)} cells")
    return OK


def cmd_verify(a) -> int:
    names = SUITES if a.suite == "all" else (a.suite,)
    reports = [run_suite(n, a.max_size, a.seed, a.mutant) for n in names]
    _emit({"reports": [r.to_dict() for r in reports]}, a.out)
    for r in reports:
        _say(f"{r.suite}: {r.cases} cases, {len(r.failures)} failures, {r.wall_time:.2f}s")
    return OK if all(r.ok for r in reports) else VIOLATION


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="continua", description="Coding continua at finite truncation scale.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("encode-order", help="encode a finite linear order as a closed subset of [0,1]")
    s.add_argument("--order", required=True)
    s.add_argument("--out")
    s.add_argument("--intervals")
    s.set_defaults(func=cmd_encode_order)

    s = sub.add_parser("invariants", help="print the pattern and count invariants of a set")
    s.add_argument("--set", required=True)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("decide", help="decide h1 (homeomorphic) or r1 (ambiently homeomorphic)")
    s.add_argument("--relation", choices=("h1", "r1"), required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("build", help="build a coding complex")
    s.add_argument("--kind", choices=("i", "fan", "tilde", "j", "hat"), required=True)
    s.add_argument("--set")
    s.add_argument("--in", dest="input", help="complex to cone over (fan only)")
    s.add_argument("--depth", type=int)
    s.add_argument("--apex")
    s.add_argument("--out")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("lift", help="lift a PL map of [0,1] to a coding complex")
    s.add_argument("--kind", choices=("hat", "tilde"), required=True)
    s.add_argument("--map", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--depth", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("analyze", help="path components and punctures")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--op", choices=("components", "puncture"), default="components")
    s.add_argument("--point", action="append")
    s.add_argument("--out")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("turbulence", help="the integer-sequence gadget")
    s.add_argument("action", choices=("build", "verify"))
    s.add_argument("--seq")
    s.add_argument("--x")
    s.add_argument("--y")
    s.add_argument("--window", type=int, default=4)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--out")
    s.set_defaults(func=cmd_turbulence)

    s = sub.add_parser("render", help="draw a complex as SVG")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--samples", type=int, default=64)
    s.add_argument("--out")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("verify", help="run verification suites")
    s.add_argument("--suite", choices=SUITES + ("all",), default="all")
    s.add_argument("--max-size", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mutant")
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    if args.command == "turbulence":
        need = ("seq",) if args.action == "build" else ("x", "y")
        missing = [n for n in need if getattr(args, n) is None]
        if missing:
            _say(f"turbulence {args.action} needs --{' --'.join(missing)}")
            return INPUT_ERROR
    try:
        return args.func(args)
    except (jio.FormatError, ValueError, TypeError, ZeroDivisionError) as e:
        _say(f"input error: {e}")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
