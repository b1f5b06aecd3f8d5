import json
import math
from fractions import Fraction as F

import pytest

from continua import io as jio
from continua.cli import main
from continua.coding import build_J, build_hat
from continua.encoder import LinearOrderSpec, encode_order
from continua.gadget import IntSeq, build_F
from continua.geometry import Interval, PLHomeo1D, Point, mk_closed_set, reversal

HALF = F(1, 2)
A = mk_closed_set([Point(0), Interval(F(1, 3), HALF), Point(1)])


def test_round_trips():
    assert jio.closed_set_from_dict(jio.closed_set_to_dict(A)) == A
    h = PLHomeo1D.from_pairs([(0, 1), (F(2, 7), F(1, 3)), (1, 0)])
    assert jio.pl_from_dict(jio.pl_to_dict(h)) == h
    R = LinearOrderSpec.from_ranks((3, 1, 2))
    assert jio.order_from_dict(jio.order_to_dict(R)) == R
    removed, _ = encode_order(R)
    assert jio.intervals_from_dict(jio.intervals_to_dict(removed)) == removed
    x = IntSeq((0, 3, -2))
    assert jio.intseq_from_dict(json.loads(jio.dumps(jio.intseq_to_dict(x)))) == x
    for C in (build_F((1, 0, -1), 2), build_J(A, 2), build_hat(A)):
        back = jio.complex_from_dict(json.loads(jio.dumps(jio.complex_to_dict(C))))
        assert back == C


def test_gadget_charts_keep_infinities():
    C = build_F((0, 0), 2)
    rails = [c for c in C.cells if c.label == "rail"]
    doc = jio.cell_to_dict(rails[0])
    assert "-inf" in json.dumps(doc)
    assert jio.cell_from_dict(doc).chart[0][1] == -math.inf


def test_malformed_documents():
    with pytest.raises(jio.FormatError):
        jio.closed_set_from_dict({"components": [{"interval": ["1/2", "1/3"]}]})
    with pytest.raises(jio.FormatError):
        jio.closed_set_from_dict({"components": [{"point": 0.5}]})
    with pytest.raises(jio.FormatError):
        jio.intseq_from_dict({"values": [1, 2.5]})
    with pytest.raises(jio.FormatError):
        jio.cell_from_dict({"seg": [["0", "0"], ["1", "0"]], "point": ["0", "0"]})
    with pytest.raises(jio.FormatError):
        jio.parse_point("0,x")
    assert jio.parse_point("0,1/2") == (0, HALF)


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_cli_encode_and_invariants(tmp_path, capsys):
    order = _write(tmp_path, "r.json", {"n": 3, "ranks": [1, 3, 2]})
    out = tmp_path / "a.json"
    assert main(["encode-order", "--order", order, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [c.get("point") for c in doc["components"]] == ["0", "1/3", "5/9", "1"]
    assert main(["invariants", "--set", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["S"] == {"point_count": 4, "interval_count": 0}


def test_cli_decide_exit_codes(tmp_path):
    a = _write(tmp_path, "a.json", jio.closed_set_to_dict(mk_closed_set([Point(0)])))
    b = _write(tmp_path, "b.json", jio.closed_set_to_dict(mk_closed_set([Point(1)])))
    c = _write(tmp_path, "c.json", jio.closed_set_to_dict(mk_closed_set([Point(HALF)])))
    assert main(["decide", "--relation", "r1", "--a", a, "--b", b]) == 0
    assert main(["decide", "--relation", "r1", "--a", a, "--b", c]) == 1
    assert main(["decide", "--relation", "h1", "--a", a, "--b", c]) == 0
    assert main(["decide", "--relation", "r1", "--a", a, "--b", str(tmp_path / "missing.json")]) == 2
    assert main(["decide", "--relation", "nope", "--a", a, "--b", b]) == 2


def test_cli_build_analyze(tmp_path, capsys):
    s = _write(tmp_path, "s.json", {"components": [{"point": "0"}]})
    j = tmp_path / "j.json"
    assert main(["build", "--kind", "j", "--set", s, "--depth", "2", "--out", str(j)]) == 0
    assert main(["build", "--kind", "j", "--set", s]) == 2
    capsys.readouterr()
    assert main(["analyze", "--in", str(j), "--op", "puncture", "--point", "1/2,1/2,1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["components"] == 1 and doc["punctures"][0]["after"] == 3
    assert main(["analyze", "--in", str(j), "--op", "puncture", "--point", "1/2,1/2"]) == 2
    assert main(["analyze", "--in", str(j), "--op", "puncture", "--point", "9,9,9"]) == 2


def test_cli_lift(tmp_path):
    m = _write(tmp_path, "f.json", jio.pl_to_dict(reversal()))
    a = _write(tmp_path, "a.json", jio.closed_set_to_dict(mk_closed_set([Point(0)])))
    b = _write(tmp_path, "b.json", jio.closed_set_to_dict(mk_closed_set([Point(1)])))
    assert main(["lift", "--kind", "hat", "--map", m, "--a", a, "--b", b, "--out", str(tmp_path / "o.json")]) == 0
    assert main(["lift", "--kind", "tilde", "--map", m, "--a", a, "--b", b, "--depth", "2",
                 "--out", str(tmp_path / "t.json")]) == 0
    assert main(["lift", "--kind", "hat", "--map", m, "--a", a, "--b", a]) == 2


def test_cli_turbulence(tmp_path, capsys):
    x = _write(tmp_path, "x.json", {"values": [0, 0, 0]})
    y = _write(tmp_path, "y.json", {"values": [1, 0, -1]})
    short = _write(tmp_path, "z.json", {"values": [1]})
    assert main(["turbulence", "build", "--seq", x, "--window", "2", "--out", str(tmp_path / "F.json")]) == 0
    assert main(["turbulence", "verify", "--x", x, "--y", y, "--window", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True
    assert main(["turbulence", "verify", "--x", x]) == 2
    assert main(["turbulence", "build", "--seq", short]) == 2
    assert main(["render", "--in", str(tmp_path / "F.json"), "--out", str(tmp_path / "F.svg")]) == 0
    assert (tmp_path / "F.svg").read_text().startswith("<svg")


def test_cli_verify(tmp_path):
    assert main(["verify", "--suite", "encoder", "--max-size", "4", "--out", str(tmp_path / "r.json")]) == 0
    assert main(["verify", "--suite", "encoder", "--max-size", "4", "--mutant", "swap",
                 "--out", str(tmp_path / "m.json")]) == 1
    assert main(["verify", "--suite", "bogus"]) == 2


def test_json_deterministic():
    C = build_F((2, -1, 0), 3)
    assert jio.dumps(jio.complex_to_dict(C)) == jio.dumps(jio.complex_to_dict(build_F((2, -1, 0), 3)))
