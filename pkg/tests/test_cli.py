import csv
import io
import json
import subprocess
import sys

import pytest

from ekron.cli import main, parse_int


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def reals(obj):
    """Every {"value": ...} leaf that should carry a precision."""
    if isinstance(obj, dict):
        if "value" in obj and isinstance(obj["value"], str):
            yield obj
        for v in obj.values():
            yield from reals(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from reals(v)


def test_parse_int():
    assert parse_int("10^6") == 10**6
    assert parse_int("1_000") == 1000
    assert parse_int("3e4") == 30000


def test_gamma_rational():
    code, out, _ = run("gamma", "--field", "Q", "--bound", "10^6")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "ekron/1"
    assert doc["inputs"]["bound"] == 10**6
    assert abs(float(doc["value"]["value"]) - 0.5772156649) < 1e-6


def test_witness_rational():
    code, out, _ = run("witness", "--field", "Q", "--omega-i", "2:1:0", "--omega-j", "3:1:0")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "TranscendentalDifference"
    assert doc["form"] == {"2": "1", "3": "-1/2"}


def test_witness_conjugates_exit_three():
    code, out, _ = run("witness", "--field", "Q(sqrt,-1)", "--omega-i", "5:1:0", "--omega-j", "5:1:1")
    assert code == 3
    doc = json.loads(out)
    assert doc["verdict"] == "ZeroDifference" and doc["hypothesis_ok"] is False


def test_witness_identical_sets_exit_three():
    # a zero form always comes with an empty rational-prime difference, so the
    # hypothesis code takes precedence over the zero-difference code
    code, out, _ = run("witness", "--field", "Q", "--omega-i", "2:1:0", "--omega-j", "2:1:0")
    assert code == 3 and json.loads(out)["verdict"] == "ZeroDifference"


def test_sieve_csv():
    code, out, _ = run("sieve", "--field", "Q(sqrt,-1)", "--bound", "25")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "a_m", "A_m"]
    assert rows[25] == ["25", "3", "20"]


def test_sieve_exclude():
    code, out, _ = run("sieve", "--field", "Q(sqrt,-1)", "--bound", "10", "--exclude", "2:1:0")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[2][1] == "0" and rows[5][1] == "2"


@pytest.mark.parametrize(
    "argv",
    [
        ["gamma", "--field", "Q(x)"],
        ["gamma", "--field", "Q(sqrt,4)"],
        ["sieve", "--field", "Q", "--bogus"],
        ["nope"],
        ["delta", "--field", "Q", "--omega", "4:1:0"],
        ["gamma", "--field", "Q", "--precision", "32"],
        ["sieve", "--field", "Q", "--bound", "0"],
    ],
)
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 64 and out == "" and err


def test_residue_exact_and_fit():
    code, out, _ = run("residue", "--field", "Q(sqrt,-1)")
    doc = json.loads(out)
    assert code == 0 and doc["method"] == "exact_L_value"
    assert doc["value"]["value"].startswith("0.78539816339744830961")
    code, out, _ = run("residue", "--field", "Q(sqrt,-1)", "--method", "fit", "--bound", "10^6")
    assert code == 0 and json.loads(out)["method"] == "fit"


def test_residue_exact_cyclotomic_is_data_error():
    code, _, err = run("residue", "--field", "Q(zeta,5)", "--method", "exact")
    assert code == 65 and "residue_fit" in err


def test_delta_and_gamma_omega():
    code, out, _ = run("delta", "--field", "Q(sqrt,-1)", "--omega", "5:1:0,5:1:1", "--bound", "10")
    assert code == 0 and json.loads(out)["delta"]["exact"] == "16/25"
    code, out, _ = run("gamma-omega", "--field", "Q", "--omega", "2:1:0", "--bound", "10^5")
    doc = json.loads(out)
    assert code == 0 and float(doc["difference"]["value"]) < 1e-3


def test_gamma_omega_rule():
    code, out, _ = run("delta", "--field", "Q", "--omega-rule", "all", "--bound", "10")
    assert code == 0 and json.loads(out)["delta"]["exact"] == "8/35"


def test_verify_identities_small():
    code, out, _ = run("verify-identities", "--field", "Q(sqrt,5)", "--norm-bound", "50")
    doc = json.loads(out)
    assert code == 0 and doc["failures"] == 0 and doc["ideals_checked"] > 0


def test_rosen_csv():
    code, out, _ = run("rosen", "--field", "Q", "--points", "10,100")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["delta_exact"] == "yes"
    assert abs(float(rows[0]["delta"]) - 8 / 35) < 1e-15


def test_field_info():
    code, out, _ = run("field-info", "--field", "Q(zeta,5)")
    doc = json.loads(out)
    assert code == 0 and doc["degree"] == 4 and doc["discriminant"] == 125


@pytest.mark.parametrize(
    "argv",
    [
        ["gamma", "--field", "Q(sqrt,5)", "--bound", "10^5"],
        ["witness", "--field", "Q", "--omega-i", "2:1:0", "--omega-j", "3:1:0"],
        ["gamma-omega", "--field", "Q(sqrt,-1)", "--omega", "2:1:0", "--bound", "10^5"],
        ["residue", "--field", "Q(zeta,5)", "--bound", "10^5"],
        ["delta", "--field", "Q", "--omega", "2:1:0,7:1:0", "--bound", "100"],
        ["field-info", "--field", "Q(sqrt,-3)"],
    ],
)
def test_json_precision_and_determinism(argv):
    a, b = run(*argv), run(*argv)
    assert a == b
    doc = json.loads(a[1])
    leaves = list(reals(doc))
    assert all(leaf.get("precision_bits") == 128 for leaf in leaves if "exact" not in leaf or "precision_bits" in leaf)
    assert "inputs" in doc


def test_precision_flag_propagates():
    code, out, _ = run("gamma", "--field", "Q", "--bound", "10^4", "--precision", "200")
    doc = json.loads(out)
    assert code == 0 and doc["value"]["precision_bits"] == 200
    assert len(doc["value"]["value"]) > 55


def test_console_entry_point_subprocess():
    r = subprocess.run(
        [sys.executable, "-m", "ekron.cli", "sieve", "--field", "Q", "--bound", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert r.returncode == 0 and r.stdout.splitlines()[-1] == "3,1,3"
    r2 = subprocess.run([sys.executable, "-m", "ekron.cli", "sieve", "--field", "Q", "--bound", "3"], capture_output=True, text=True)
    assert r.stdout == r2.stdout


def test_rule_with_huge_delta_reports_size():
    code, out, _ = run("gamma-omega", "--field", "Q", "--omega-rule", "all", "--bound", "10^5", "--method", "closed")
    doc = json.loads(out)
    assert code == 0
    assert doc["delta"]["exact"] is None and doc["delta"]["denominator_bits"] > 3000
    assert doc["delta"]["precision_bits"] == 128
