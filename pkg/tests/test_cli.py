import json
import pathlib
import subprocess
import sys

import pytest

from polarnewton.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name,argv", [
    ("cf_19_7", ["--format", "json", "cf", "--q", "19", "--p", "7"]),
    ("locus_g1_7_19", ["--format", "json", "locus", "g1", "--p", "7", "--q", "19"]),
    ("topology_g1_7_19", ["--format", "json", "topology", "g1", "--p", "7", "--q", "19"]),
    ("locus_g1_5_12", ["--format", "json", "locus", "g1", "--p", "5", "--q", "12"]),
    ("locus_g2_5_12_1", ["--format", "json", "locus", "g2", "--p", "5", "--q", "12", "--d", "1"]),
    ("topology_g2_5_12_1", ["--format", "json", "topology", "g2", "--p", "5", "--q", "12", "--d", "1"]),
    ("polar_pinned_member",
     ["--format", "json", "polar", "--expr", "y^5 - x^12 + x^5*y^3 + x^8*y^2 + (9/20)*x^10*y"]),
])
def test_golden_pinned_examples(capsys, name, argv):
    code, out, _err = run_cli(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_envelope_shape(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "cf", "--q", "12", "--p", "5")
    payload = json.loads(out)
    assert list(payload) == ["tool_version", "command", "inputs", "result", "warnings"]
    assert payload["command"] == "cf"


def test_classify_text_output(capsys):
    code, out, _ = run_cli(capsys, "classify", "--semigroup", "6,9,19")
    assert code == 0
    assert "nondegenerate_general_polar: False" in out
    assert "e1=3" in out


def test_classify_yes_cases(capsys):
    for gens in ("4,9", "4,6,13"):
        code, out, _ = run_cli(capsys, "classify", "--semigroup", gens)
        assert code == 0
        assert "nondegenerate_general_polar: True" in out


def test_nondeg_reports_sides(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "nondeg", "--expr", "y^2 - x^3")
    payload = json.loads(out)
    assert payload["result"]["verdict"] == "nondegenerate"
    assert payload["result"]["sides"][0]["squarefree"] is True


def test_polygon_reads_input_file(tmp_path, capsys):
    path = tmp_path / "curve.txt"
    path.write_text("y^2 - x^3")
    code, out, _ = run_cli(capsys, "--format", "json", "polygon", "--input", str(path))
    payload = json.loads(out)
    assert payload["result"]["vertices"] == [[0, 2], [3, 0]]


def test_puiseux_json_payload(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "puiseux", "--expr", "y^2 - x^3")
    payload = json.loads(out)
    (branch,) = payload["result"]["branches"]
    assert branch["ramification"] == 2
    assert branch["char_exponents"] == [2, 3]
    assert branch["semigroup"] == [2, 3]


def test_verify_subcommand_runs(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "verify", "g1",
                           "--p", "2", "--q", "3", "--trials", "2", "--seed", "1")
    payload = json.loads(out)
    assert payload["result"]["summary"]["polygon_match"] == 2


def test_computation_error_exit_code(capsys):
    code, _out, err = run_cli(capsys, "polygon", "--expr", "y^2 -")
    assert code == 1
    assert "error" in err


def test_usage_error_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "polarnewton.cli", "polygon", "--nope"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2


def test_round_trip_of_expression_payload(capsys):
    from polarnewton.algebra import Y
    from polarnewton.curves import parse_series

    expr = "y^7 - x^19 + a[11,3]*x^11*y^3"
    code, out, _ = run_cli(capsys, "--format", "json", "polar", "--expr", expr, "--a", "0", "--b", "1")
    payload = json.loads(out)
    rendered = payload["result"]["polar"]
    assert parse_series(rendered).poly == parse_series(expr).poly.deriv(Y)
