"""Deterministic SVG drawings of complexes.

Coordinates are written in the complex's own units (six decimals), with the
y axis flipped by a group transform, so tests can read positions straight
out of the document.
"""

from __future__ import annotations

from collections import defaultdict
from xml.sax.saxutils import quoteattr

from .complex import POINT, RECT, SEG, GeoComplex

STYLE = {
    "stripe": 'stroke="black" fill="none"',
    "filled": 'stroke="black" fill="orange"',
    "connector": 'stroke="steelblue" fill="none"',
    "I0": 'stroke="darkred" fill="none"',
    "junction": 'fill="red"',
    "rail": 'stroke="gray" fill="none" stroke-dasharray="0.004"',
    "cone": 'stroke="teal" fill="none"',
    "floor": 'stroke="black" fill="none"',
    "floor-cube": 'stroke="black" fill="none"',
    "dset": 'fill="navy"',
    "apex": 'fill="red"',
    "cylinder": 'stroke="black" fill="lightgray"',
}
DEFAULT = 'stroke="black" fill="none"'


def _n(v) -> str:
    return f"{float(v):.6f}"


def _proj(v) -> tuple:
    return v[0], v[1]


def _tagattr(tag) -> str:
    return quoteattr(" ".join(str(t) for t in tag)) if tag else '""'


def render_svg(C: GeoComplex, samples: int = 64) -> str:
    """SVG document for a 2-D complex (3-D complexes drop their last axis).

    Connector polylines are grouped into one path per connector; ``samples``
    caps the number of path segments drawn for each."""
    if C.dim > 3:
        raise ValueError("only complexes of dimension 2 or 3 can be drawn")
    if C.dim < 2:
        raise ValueError("need at least two coordinates to draw")
    if samples < 1:
        raise ValueError("samples must be positive")
    pts = [_proj(v) for c in C.cells for v in (c.corners() if c.kind == RECT else c.verts)]
    xs = [float(p[0]) for p in pts] or [0.0]
    ys = [float(p[1]) for p in pts] or [0.0]
    pad = 0.05
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    w, h = x1 - x0, y1 - y0
    sw = max(w, h) / 800
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_n(x0)} {_n(-y1)} {_n(w)} {_n(h)}" width="800" height="{int(800 * h / w)}">',
        f'<g transform="scale(1,-1)" stroke-width="{_n(sw)}">',
    ]
    connectors = defaultdict(list)
    for c in C.cells:
        label = c.label
        if label == "connector" and c.tag:
            connectors[c.tag[1]].append(c)
            continue
        if c.kind == RECT:
            lo, hi = c.verts
            (ax, ay), (bx, by) = _proj(lo), _proj(hi)
            style = STYLE["filled"] if label == "stripe" else STYLE.get(label, DEFAULT)
            cls = "stripe filled" if label == "stripe" else (label or "cell")
            out.append(
                f'<rect class="{cls}" data-tag={_tagattr(c.tag)} x="{_n(ax)}" y="{_n(ay)}" '
                f'width="{_n(bx - ax)}" height="{_n(by - ay)}" {style}/>'
            )
        elif c.kind == SEG:
            (ax, ay), (bx, by) = _proj(c.verts[0]), _proj(c.verts[1])
            out.append(
                f'<line class="{label or "cell"}" data-tag={_tagattr(c.tag)} x1="{_n(ax)}" y1="{_n(ay)}" '
                f'x2="{_n(bx)}" y2="{_n(by)}" {STYLE.get(label, DEFAULT)}/>'
            )
        else:
            ax, ay = _proj(c.verts[0])
            out.append(
                f'<circle class="{label or "cell"}" data-tag={_tagattr(c.tag)} cx="{_n(ax)}" cy="{_n(ay)}" '
                f'r="{_n(3 * sw)}" {STYLE.get(label, "")}/>'
            )
    for n in sorted(connectors):
        segs = sorted(connectors[n], key=lambda c: c.tag[2])
        chain = [segs[0].verts[0]] + [s.verts[1] for s in segs]
        step = max(1, -(-(len(chain) - 1) // samples))
        keep = chain[::step]
        if keep[-1] != chain[-1]:
            keep.append(chain[-1])
        d = "M " + " L ".join(f"{_n(p[0])} {_n(p[1])}" for p in map(_proj, keep))
        out.append(f'<path class="connector" data-tag="connector {n}" d="{d}" {STYLE["connector"]}/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
