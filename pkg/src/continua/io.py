"""JSON formats for every value the CLI reads or writes.

Rationals travel as "p/q" strings, the logical infinities as "inf"/"-inf".
Every ``*_to_dict`` has a matching ``*_from_dict`` and the pair round-trips
to an equal value.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from pathlib import Path

from .complex import POINT, RECT, SEG, Cell, GeoComplex
from .encoder import LinearOrderSpec, RemovedIntervals
from .gadget import IntSeq
from .geometry import ClosedSet1D, Interval, PLHomeo1D, Point, fmt, mk_closed_set, rational

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class FormatError(ValueError):
    """Malformed input document."""


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise FormatError(f"cannot read {path}: {e}") from e


def write_text(path, text: str) -> None:
    Path(path).write_text(text)


def _q(s) -> Fraction:
    try:
        return rational(s)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise FormatError(f"not a rational: {s!r}") from e


def _ext(v):
    """Encode a rational or infinity."""
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        raise FormatError(f"finite float {v!r} in an exact document")
    return fmt(v)


def _unext(s):
    if s == "inf":
        return math.inf
    if s == "-inf":
        return -math.inf
    return _q(s)


# ---------------------------------------------------------------------------
# closed sets and PL maps


def closed_set_to_dict(A: ClosedSet1D) -> dict:
    comps = []
    for c in A.components:
        if isinstance(c, Point):
            comps.append({"point": fmt(c.p)})
        else:
            comps.append({"interval": [fmt(c.a), fmt(c.b)]})
    return {"components": comps}


def closed_set_from_dict(doc) -> ClosedSet1D:
    try:
        raw = []
        for item in doc["components"]:
            if "point" in item:
                raw.append(Point(_q(item["point"])))
            elif "interval" in item:
                a, b = item["interval"]
                a, b = _q(a), _q(b)
                if a > b:
                    raise FormatError(f"interval [{fmt(a)}, {fmt(b)}] has a > b")
                raw.append(Point(a) if a == b else Interval(a, b))
            else:
                raise FormatError(f"component must be a point or an interval: {item!r}")
        return mk_closed_set(raw)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"bad closed set: {e}") from e


def pl_to_dict(h: PLHomeo1D) -> dict:
    return {"orientation": h.orientation, "breakpoints": [[fmt(x), fmt(y)] for x, y in h.breakpoints]}


def pl_from_dict(doc) -> PLHomeo1D:
    try:
        pairs = tuple((_q(x), _q(y)) for x, y in doc["breakpoints"])
        return PLHomeo1D(pairs, doc["orientation"])
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"bad PL homeomorphism: {e}") from e


# ---------------------------------------------------------------------------
# orders and sequences


def order_to_dict(R: LinearOrderSpec) -> dict:
    return {"n": R.n, "ranks": list(R.ranks)}


def order_from_dict(doc) -> LinearOrderSpec:
    try:
        ranks = doc["ranks"]
        if any(isinstance(r, bool) or not isinstance(r, int) for r in ranks):
            raise FormatError("ranks must be integers")
        return LinearOrderSpec(int(doc["n"]), tuple(ranks))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"bad linear order: {e}") from e


def intervals_to_dict(I: RemovedIntervals) -> dict:
    return {"intervals": [[fmt(a), fmt(b)] for a, b in I.intervals]}


def intervals_from_dict(doc) -> RemovedIntervals:
    try:
        return RemovedIntervals(tuple((_q(a), _q(b)) for a, b in doc["intervals"]))
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"bad interval list: {e}") from e


def intseq_to_dict(x: IntSeq) -> dict:
    return {"values": list(x.values)}


def intseq_from_dict(doc) -> IntSeq:
    try:
        vals = doc["values"]
        if any(isinstance(v, bool) or not isinstance(v, int) for v in vals):
            raise FormatError("values must be integers")
        return IntSeq(tuple(vals))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"bad integer sequence: {e}") from e


# ---------------------------------------------------------------------------
# complexes


def _tag_out(v):
    if isinstance(v, Fraction):
        return fmt(v)
    if isinstance(v, tuple):
        return [_tag_out(x) for x in v]
    return v


def _tag_in(v):
    if isinstance(v, str) and _RATIONAL.match(v):
        return Fraction(v)
    if isinstance(v, list):
        return tuple(_tag_in(x) for x in v)
    return v


def cell_to_dict(c: Cell) -> dict:
    d = {c.kind: [[_ext(x) for x in v] for v in c.verts] if c.kind != POINT else [_ext(x) for x in c.verts[0]]}
    if c.label:
        d["label"] = c.label
    if c.tag:
        d["tag"] = _tag_out(c.tag)
    if c.chart is not None:
        d["chart"] = [[_ext(x) for x in v] for v in c.chart]
    return d


def cell_from_dict(d) -> Cell:
    kinds = [k for k in (POINT, SEG, RECT) if k in d]
    if len(kinds) != 1:
        raise FormatError(f"cell needs exactly one of point/seg/rect: {d!r}")
    kind = kinds[0]
    try:
        if kind == POINT:
            verts = (tuple(_q(x) for x in d[kind]),)
        else:
            verts = tuple(tuple(_q(x) for x in v) for v in d[kind])
        chart = None
        if "chart" in d:
            chart = tuple(tuple(_unext(x) for x in v) for v in d["chart"])
        return Cell(kind, verts, d.get("label", ""), tag=_tag_in(d.get("tag", [])), chart=chart)
    except FormatError:
        raise
    except (TypeError, ValueError) as e:
        raise FormatError(f"bad cell {d!r}: {e}") from e


def complex_to_dict(C: GeoComplex) -> dict:
    doc = {"dim": C.dim}
    if C.meta:
        doc["meta"] = C.meta
    doc["cells"] = [cell_to_dict(c) for c in C.cells]
    return doc


def complex_from_dict(doc) -> GeoComplex:
    try:
        dim = int(doc["dim"])
        cells = tuple(cell_from_dict(c) for c in doc["cells"])
        return GeoComplex(dim, cells, dict(doc.get("meta", {})))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"bad complex: {e}") from e


def parse_point(text: str) -> tuple:
    """ "0,1/2" -> (0, 1/2)"""
    try:
        return tuple(_q(p) for p in text.split(","))
    except FormatError:
        raise FormatError(f"bad point {text!r}; expected comma-separated rationals")
