"""CLI contract: frozen outputs, exit codes, schemas, determinism."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from nilbch.cli import main

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def run_cli(argv, stdin_text: str | None = None):
    out, err = io.StringIO(), io.StringIO()
    saved = sys.stdin
    if stdin_text is not None:
        sys.stdin = io.StringIO(stdin_text)
    try:
        with redirect_stdout(out), redirect_stderr(err):
            code = main(argv)
    finally:
        sys.stdin = saved
    return code, out.getvalue(), err.getvalue()


def run_subprocess(argv, stdin_text: str = ""):
    return subprocess.run(
        [sys.executable, "-m", "nilbch", *argv],
        input=stdin_text,
        capture_output=True,
        text=True,
    )


def validate(payload, schema_name: str):
    schema = json.loads((SCHEMAS / schema_name).read_text())
    jsonschema.validate(payload, schema)


def test_synth_sum_step_one_frozen():
    code, out, _ = run_cli(["synth-sum", "--step", "1"])
    assert code == 0
    assert out == '{"m":1,"word":"a b","length":2,"certificate":"exact"}\n'
    validate(json.loads(out), "synth_sum.json")


def test_synth_sum_step_two_frozen():
    code, out, _ = run_cli(["synth-sum", "--step", "2"])
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "m": 2,
        "word": "a^2 b^2 c(b, a)^2",
        "length": 12,
        "certificate": "exact",
    }
    validate(payload, "synth_sum.json")


def test_hall_output():
    code, out, _ = run_cli(["hall", "--gens", "2", "--step", "3"])
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 5
    assert payload["words"][:3] == ["x1", "x2", "[x1,x2]"]
    validate(payload, "hall.json")


def test_bch_default_output():
    code, out, _ = run_cli(["bch", "--step", "2"])
    assert code == 0
    payload = json.loads(out)
    assert payload == {"x1": "1", "x2": "1", "[x1,x2]": "1/2"}
    validate(payload, "lie_element.json")


def test_bch_degree_table():
    code, out, _ = run_cli(["bch", "--step", "3", "--degree-table"])
    assert code == 0
    payload = json.loads(out)
    assert payload[0] == {"pattern": [1, 2], "coefficient": "-1/2"}
    assert len(payload) == 3
    validate(payload, "pattern_table.json")


def test_synth_power_success():
    code, out, _ = run_cli(
        ["synth-power", "--step", "3", "--gens", "2", "--level", "3", "--T", "12"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["divisors"] == [1, 2, 12]
    assert payload["min_residual_degree"] == "exact"
    assert payload["residual_degrees"] == []
    validate(payload, "synth_power.json")


def test_synth_power_divisibility_error():
    code, out, err = run_cli(
        ["synth-power", "--step", "3", "--gens", "2", "--level", "2", "--T", "7"]
    )
    assert code == 2
    assert out == ""
    payload = json.loads(err)
    assert payload["error"] == "divisibility"
    assert payload["required"] == 2
    assert payload["got"] == 7
    validate(payload, "error.json")


def test_extract_bracket_stdin():
    logs = json.dumps([{"x1": "1"}, {"x2": "1"}])
    code, out, _ = run_cli(["extract-bracket", "--step", "3"], stdin_text=logs)
    assert code == 0
    payload = json.loads(out)
    assert payload == {"[x1,x2]": "1"}
    validate(payload, "lie_element.json")


def test_extract_bracket_bad_stdin():
    code, _, err = run_cli(["extract-bracket", "--step", "2"], stdin_text="[1, 2, 3]")
    assert code == 2
    assert json.loads(err)["error"] == "json"
    code, _, err = run_cli(["extract-bracket", "--step", "2"], stdin_text="{not json")
    assert code == 2


def test_verify_identities_small():
    code, out, _ = run_cli(
        ["verify-identities", "--step", "2", "--trials", "5", "--seed", "7"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["all_pass"] is True
    validate(payload, "verify_report.json")


def test_growth_report_and_schema():
    code, out, err = run_cli(
        ["growth", "--group", "ut", "--dim", "3", "--radius", "1"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ball"] == {"size": 5, "size_aa": 17, "doubling": "17/5"}
    assert payload["cover"]["k"] == 4
    assert payload["log"]["ratio"] == "13/5"
    assert payload["sum_containment"]["pass"] is True
    assert payload["bracket_containment"]["failures"] == 0
    assert payload["b_chain"] == {"sizes": [5, 3, 1], "top_trivial": True}
    validate(payload, "growth_report.json")
    assert "timing" in err  # timing only on stderr


def test_growth_validation_errors():
    code, _, err = run_cli(["growth", "--group", "sl", "--dim", "3", "--radius", "1"])
    assert code == 2
    assert json.loads(err)["error"] == "validation"
    code, _, err = run_cli(
        ["growth", "--group", "ut", "--dim", "3", "--radius", "1", "--powers", "0"]
    )
    assert code == 2


def test_growth_size_cap_exit():
    code, _, err = run_cli(
        ["growth", "--group", "ut", "--dim", "3", "--radius", "2", "--cap", "40"]
    )
    assert code == 3
    payload = json.loads(err)
    assert payload["error"] == "size-cap"
    assert payload["cap"] == 40
    validate(payload, "error.json")


def test_usage_errors():
    code, _, err = run_cli(["bogus"])
    assert code == 2
    assert json.loads(err)["error"] == "usage"
    code, _, err = run_cli(["hall", "--gens", "2", "--step", "2", "--frobnicate"])
    assert code == 2
    code, _, err = run_cli(["hall", "--gens", "2"])
    assert code == 2


def test_out_file_mirrors_stdout(tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(["synth-sum", "--step", "2", "--out", str(target)])
    assert code == 0
    assert target.read_text() == out


def test_text_format():
    code, out, _ = run_cli(["synth-sum", "--step", "2", "--format", "text"])
    assert code == 0
    assert "word = a^2 b^2 c(b, a)^2" in out
    code, out, _ = run_cli(["hall", "--gens", "2", "--step", "2", "--format", "text"])
    assert out == "x1\nx2\n[x1,x2]\n"


def test_subprocess_byte_determinism_quick():
    # two fresh interpreter runs must agree byte for byte
    args = ["verify-identities", "--step", "2", "--trials", "5"]
    first = run_subprocess(args)
    second = run_subprocess(args)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_console_entry_point_runs():
    out = subprocess.run(
        ["nilbch", "synth-sum", "--step", "1"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["m"] == 1
