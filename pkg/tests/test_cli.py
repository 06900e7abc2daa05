import json

import pytest

from fibsurf.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, err = run_cli(capsys, "classify", "--mults", "2,3,7")
    assert code == 0
    assert json.loads(out)["classification"] == "GeneralType"
    assert "1/42" in err


def test_quiet_suppresses_summary(capsys):
    code, out, err = run_cli(capsys, "--quiet", "classify", "--mults", "2,3,6")
    assert code == 0 and err == ""
    assert json.loads(out)["exception_family"] == "(2,3,k)"
    code, _, err = run_cli(capsys, "classify", "--mults", "2,3,6", "--quiet")
    assert err == ""


def test_genus_and_winters(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"components": [{"id": "A", "mult": 2}, {"id": "B", "mult": 3}],
                                "intersections": [["A", "B", 6]]}))
    code, out, _ = run_cli(capsys, "--quiet", "genus", "--config", str(path))
    assert code == 0 and json.loads(out)["genus"] == 11
    code, out, _ = run_cli(capsys, "--quiet", "winters", "--config", str(path))
    assert code == 0 and json.loads(out)["passed"]
    path.write_text(json.dumps({"components": [{"id": "A", "mult": 2}, {"id": "B", "mult": 3}],
                                "intersections": [["A", "B", 1]]}))
    code, out, _ = run_cli(capsys, "--quiet", "winters", "--config", str(path))
    assert code == 2 and not json.loads(out)["passed"]
    code, out, _ = run_cli(capsys, "--quiet", "genus", "--genus", "7")
    assert json.loads(out)["admissible"] == {"1": 7, "2": 4, "3": 3, "6": 2}


def test_resolve(capsys):
    code, out, _ = run_cli(capsys, "--quiet", "resolve", "--branch", "t*(x^6 + t*x^3 + t^2)", "--point", "0,0")
    doc = json.loads(out)
    assert code == 0
    assert doc["tree"]["multiplicities"] == [3, 4, 3, 2, 2, 2]
    assert doc["delta"] == {"chi": -1, "K2": -2}
    code, out, _ = run_cli(capsys, "--quiet", "resolve", "--template", "t*(x^3 + t^2)", "--copies", "2", "--emit-dot")
    assert out.startswith("digraph")


def test_resolve_syntax_error(capsys):
    code, out, err = run_cli(capsys, "resolve", "--branch", "x^2 + * t", "--point", "0,0")
    assert code == 2
    assert "position" in json.loads(out)["error"]
    code, out, _ = run_cli(capsys, "resolve", "--branch", "x^2 + t^3")
    assert code == 2 and "--point" in json.loads(out)["error"]


def test_resolve_bihomogeneous_branch_with_automatic_centers(capsys):
    code, out, _ = run_cli(capsys, "--quiet", "resolve", "--branch", "t*s*(s^2*x^6 + s*t*x^3*z^3 + t^2*z^6)")
    assert code == 0
    assert json.loads(out)["tree"]["base_points"] == ["[0:1]", "[1:0]"]


def test_track(capsys):
    code, out, _ = run_cli(capsys, "--quiet", "track", "--preset", "type1", "--point", "1:0")
    doc = json.loads(out)
    assert code == 0 and doc["fibre"]["genus"] == 2 and doc["winters"]
    code, out, _ = run_cli(capsys, "--quiet", "track", "--preset", "type1", "--point", "0:1", "--emit-dot")
    assert out.startswith('graph "fibre"')
    code, out, _ = run_cli(capsys, "--quiet", "track", "--preset", "type1", "--point", "0:1",
                           "--emit-dot", "--emit-json")
    assert json.loads(out)["dot"].startswith("graph")


def test_invariants(capsys):
    code, out, _ = run_cli(capsys, "--quiet", "invariants", "--preset", "type1", "--base-change", "4")
    doc = json.loads(out)
    assert code == 0
    assert (doc["chi"], doc["K2"], doc["c2"]) == (7, 16, 68)
    assert doc["classification"] == "GeneralType" and doc["minimal"] and doc["ample"]


def test_search_csv(capsys):
    code, out, _ = run_cli(capsys, "--quiet", "search", "--components", "5", "--max-mult", "3",
                           "--max-int", "1", "--csv")
    lines = out.strip().splitlines()
    assert lines[0] == "mults,matrix,genus,flags"
    assert any(line.startswith("2 2 2 3 3,0 1 1 1 1 1 0 1 1 1") and ",13," in line for line in lines)
    code, out, _ = run_cli(capsys, "--quiet", "search", "--two-component", "--max-mult", "30",
                           "--max-int", "60", "--csv")
    assert out.splitlines()[1] == "2,3,6,11"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["pipeline", "--preset", "type1"], 0),
        (["pipeline", "--preset", "type3"], 3),
        (["pipeline", "--preset", "type4", "--h", "3"], 2),
        (["pipeline", "--preset", "type1", "--alpha", "2"], 2),
    ],
)
def test_pipeline_exit_codes(capsys, argv, code):
    got, out, _ = run_cli(capsys, "--quiet", *argv)
    assert got == code
    json.loads(out)


def test_pipeline_error_message(capsys):
    code, out, err = run_cli(capsys, "pipeline", "--preset", "type4", "--h", "3")
    assert code == 2
    assert "even_divisor_check failed" in err
    assert "(7, 6)" in json.loads(out)["error"]
