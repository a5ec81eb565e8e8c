import json
import subprocess
import sys
from pathlib import Path

import pytest

from costacks.cli import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_UNKNOWN, main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    doc = json.loads(out)
    assert doc["exit_code"] == code
    return code, doc


@pytest.mark.parametrize("argv, expected", [
    (["validate", DATA / "z2.json"], EXIT_PASS),
    (["validate", DATA / "square.json"], EXIT_PASS),
    (["validate", DATA / "circle6.json"], EXIT_PASS),
    (["fingerprint", DATA / "two.json"], EXIT_PASS),
    (["pi0", DATA / "circle6.json"], EXIT_PASS),
    (["pi1", DATA / "disk4.json"], EXIT_PASS),
    (["nerve", DATA / "circle6.json", "--cover", DATA / "arcs3.json"], EXIT_PASS),
    (["colim", DATA / "span_circle.json"], EXIT_PASS),
    (["tc", DATA / "span_circle.json"], EXIT_PASS),
    (["delta", DATA / "span_circle.json"], EXIT_PASS),
    (["delta", DATA / "span_collapse.json"], EXIT_FAIL),
    (["lim", DATA / "chain_z2.json"], EXIT_PASS),
    (["tl", DATA / "chain_z2.json"], EXIT_PASS),
    (["filtered-colim", DATA / "chain_filtered.json"], EXIT_PASS),
    (["deform", DATA / "square_twisted.json"], EXIT_PASS),
    (["check-cosheaf", DATA / "circle6.json", "--cover", DATA / "arcs2.json"], EXIT_PASS),
    (["check-sh", DATA / "circle6.json", "--cover", DATA / "arcs2.json"], EXIT_PASS),
    (["check-st", DATA / "circle6.json", "--cover", DATA / "arcs3.json", "--target", DATA / "z2.json"],
     EXIT_PASS),
    (["vankampen", DATA / "circle6.json", "--cover", DATA / "arcs2.json"], EXIT_PASS),
    (["terminal-map", DATA / "disk4.json", "--cover", DATA / "disk4_cover.json"], EXIT_PASS),
    (["terminal-map", DATA / "circle6.json", "--cover", DATA / "arcs3.json"], EXIT_PASS),
])
def test_subcommands(capsys, argv, expected):
    code, doc = report(capsys, *argv)
    assert code == expected, doc
    assert doc["command"] == argv[0]


def test_human_output_lists_fields(capsys):
    code, out, _ = run(capsys, "delta", DATA / "span_circle.json")
    assert code == EXIT_PASS
    assert out.startswith("command: delta\nexit_code: 0\n")


def test_deform_with_identity_lambda(capsys):
    _, doc = report(capsys, "deform", DATA / "square.json")
    assert doc["kappa_is_identity"] is True


def test_vankampen_report(capsys):
    _, doc = report(capsys, "vankampen", DATA / "circle6.json", "--cover", DATA / "arcs2.json")
    assert doc["pushout"] == doc["two_pushout"] == "Yes"


def test_output_is_deterministic(capsys):
    argv = ["tc", DATA / "span_circle.json"]
    assert run(capsys, "--json", *argv)[1] == run(capsys, "--json", *argv)[1]


def test_options_before_or_after_subcommand(capsys):
    a = run(capsys, "--json", "--budget", "5000", "fingerprint", DATA / "z2.json")
    b = run(capsys, "fingerprint", DATA / "z2.json", "--json", "--budget", "5000")
    assert a == b and a[0] == EXIT_PASS


@pytest.mark.parametrize("argv", [
    ["validate", DATA / "broken.json"],
    ["validate", DATA / "bad_endpoint.json"],
    ["validate", DATA / "missing.json"],
    ["--budget", "0", "fingerprint", DATA / "z2.json"],
])
def test_input_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT and err


def test_parse_error_points_at_line_and_column(capsys):
    code, _, err = run(capsys, "validate", DATA / "broken.json")
    assert code == EXIT_INPUT
    assert f"{DATA / 'broken.json'}:" in err


@pytest.mark.parametrize("argv", [["frobnicate", "x.json"], ["nerve", "x.json"], []])
def test_usage_errors_exit_3(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_INPUT


def test_small_budget_is_unknown(capsys):
    code, doc = report(capsys, "--budget", "4", "tl", DATA / "chain_z2.json")
    assert code == EXIT_UNKNOWN and "budget" in doc["error"]


def test_console_script_and_environment_budget(tmp_path):
    env = {"GROUPOIDS_BUDGET": "4", "PATH": "/usr/bin:/bin"}
    cmd = [sys.executable, "-m", "costacks.cli", "tl", str(DATA / "chain_z2.json")]
    assert subprocess.run(cmd, env=env, capture_output=True).returncode == EXIT_UNKNOWN
    env["GROUPOIDS_BUDGET"] = "zero"
    assert subprocess.run(cmd, env=env, capture_output=True).returncode == EXIT_INPUT
    del env["GROUPOIDS_BUDGET"]
    assert subprocess.run(cmd, env=env, capture_output=True).returncode == EXIT_PASS
