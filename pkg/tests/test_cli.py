import json

import pytest

from conftest import alcoved_d2_formula, hex_b
from wehrhart import MPoly, WeightPoly, parametric_weighted_count
from wehrhart.alcoved import AlcovedSpec
from wehrhart.cli import main

HEX = "d=2 b12=3,b13=5,b21=4,b23=8,b31=3,b32=0"
W = "--weight=-3*x1+2*x2"
SEGMENT = '{"A": [[1], [-1]], "b0": [3, 0]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_segment(capsys):
    code, out, _ = run(capsys, "count", "--input", SEGMENT, "--weight", "x1")
    assert code == 0
    assert out.strip() == "1/2*b1^2 - 1/2*b2^2 + 1/2*b1 - 1/2*b2"


def test_count_alcoved_formula(capsys):
    code, out, _ = run(capsys, "count", "--alcoved", HEX, "--weight", "x1*x2")
    assert code == 0
    P = AlcovedSpec.parse(HEX).polytope()
    body, scale = alcoved_d2_formula()
    assert out.strip() == (MPoly.parse(body, P.name_lookup()) * scale).to_str(P.names())


def test_count_json_roundtrip(capsys):
    code, out, _ = run(capsys, "count", "--alcoved", HEX, W, "--json")
    assert code == 0
    obj = json.loads(out)
    P = AlcovedSpec.parse(HEX).polytope()
    poly = MPoly.from_json(obj["count"], P.name_lookup())
    w = WeightPoly(MPoly.parse("-3*x1+2*x2"), 2)
    direct = parametric_weighted_count(P, w)
    assert poly == direct.poly
    for k in range(4):
        b = hex_b(k)
        assert poly.eval(P.b_point(b)) == direct(b)


def test_weight_embedded_in_input(capsys):
    doc = json.dumps({"A": [[1], [-1]], "b0": [3, 0],
                      "weight": {"d": 1, "terms": [{"coeff": "1", "exponents": [1]}]}})
    code, out, _ = run(capsys, "count", "--input", doc)
    assert out.strip() == "1/2*b1^2 - 1/2*b2^2 + 1/2*b1 - 1/2*b2"


def test_labels_flag(capsys):
    code, out, _ = run(capsys, "count", "--input", SEGMENT, "--weight", "x1", "--labels", "u,v")
    assert out.strip() == "1/2*u^2 - 1/2*v^2 + 1/2*u - 1/2*v"


def test_non_smooth_exit_code(capsys):
    doc = '{"A": [[2, 0], [0, 1], [-1, 0], [0, -1]], "b0": [2, 1, 0, 0]}'
    code, out, err = run(capsys, "count", "--input", doc)
    assert code == 3
    assert out == ""
    assert "vertex" in err


def test_parse_error_exit_code(capsys):
    assert run(capsys, "count", "--alcoved", "d=2 b12=3")[0] == 2
    assert run(capsys, "count", "--input", "{not json")[0] == 2
    assert run(capsys, "count", "--input", SEGMENT, "--weight", "x1 +* 2")[0] == 2


def test_hstar(capsys):
    b = ",".join(map(str, hex_b(3)))
    code, out, _ = run(capsys, "hstar", "--alcoved", HEX, W, "--b", b)
    assert code == 0
    assert out.splitlines()[0] == "15*z^3 + 67*z^2 + 18*z"
    code, out, _ = run(capsys, "hstar", "--input", '{"A": [[1,0],[0,1],[-1,0],[0,-1]], "b0": [1,1,0,0]}')
    assert out.splitlines()[0] == "z + 1"


def test_hstar_json_and_roots(capsys):
    code, out, _ = run(capsys, "hstar", "--alcoved", HEX, W, "--json", "--roots")
    obj = json.loads(out)
    assert obj["hstar"]["z_coeffs"] == ["0", "25", "65", "10"]
    assert obj["hstar"]["denom_exp"] == 4
    assert obj["signs"] == "+,+,+"
    assert obj["degree_drop"] is False
    assert len(obj["roots"]) == 3


def test_hstar_outside_cone(capsys):
    code, out, err = run(capsys, "hstar", "--alcoved", HEX, W, "--b", "20,5,4,8,3,0")
    assert code == 4
    assert out == ""


def test_ehrhart_and_oracle(capsys):
    code, out, _ = run(capsys, "ehrhart", "--input", SEGMENT, "--weight", "x1", "--json", "--check")
    obj = json.loads(out)
    assert obj["ehrhart"]["t_coeffs"] == ["0", "3/2", "9/2"]
    assert obj["interpolation_agrees"] is True
    code, out, _ = run(capsys, "oracle", "--input", SEGMENT, "--weight", "x1", "--json")
    assert json.loads(out) == {"b": [3, 0], "points": 4, "count": "6"}


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--alcoved", HEX, W, "--samples", "10", "--seed", "1")
    assert code == 0
    assert run(capsys, "verify", "--alcoved", HEX, W, "--samples", "0", "--seed", "1")[0] == 0


def test_verify_catches_corrupted_count(capsys, tmp_path):
    code, out, _ = run(capsys, "count", "--alcoved", HEX, W, "--json")
    obj = json.loads(out)
    obj["count"]["terms"][0]["coeff"] = "123"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", "--alcoved", HEX, W, "--samples", "3", "--seed", "1",
                       "--count-json", str(path), "--json")
    assert code == 5
    report = json.loads(out)
    assert report["failures"] and all(len(f["b"]) == 6 for f in report["failures"])


def test_seed_is_mandatory(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--alcoved", HEX])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["signs", "--d", "2", "--m", "1"])


def test_signs_census(capsys):
    argv = ["signs", "--d", "2", "--m", "1", "--samples", "30", "--seed", "0", "--json"]
    code, out, _ = run(capsys, *argv)
    census = json.loads(out)["patterns"]
    assert "+,+,+" in census and "-,-,-" in census
    assert sum(v["count"] for v in census.values()) == 30
    assert run(capsys, *argv)[1] == out
    code, out, _ = run(capsys, "signs", "--d", "2", "--m", "1", "--samples", "0", "--seed", "0", "--json")
    assert json.loads(out)["patterns"] == {}


def test_dilate_scan(capsys):
    b = ",".join(map(str, hex_b(1)))
    code, out, _ = run(capsys, "dilate", "--alcoved", HEX, W, "--b", b, "--r-max", "100", "--json")
    obj = json.loads(out)
    assert len(obj["scan"]) == 100
    assert obj["scan"][0]["z_coeffs"] == ["0", "-7", "-37", "-10"]
    assert obj["R0"] is not None
    code, out, _ = run(capsys, "dilate", "--alcoved", HEX, W, "--r", "1,2", "--roots")
    assert code == 0 and len(out.splitlines()) == 2
