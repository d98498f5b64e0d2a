import dataclasses
import json
import subprocess
import sys

import pytest

from genproj import cli
from genproj.projections import metric_project

HYPERPLANE = '{"variant": "hyperplane", "k": "1", "dim": 3}'
SIMPLEX2 = '{"variant": "simplex", "r": "1", "dim": 2}'


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_registry_is_large_enough():
    assert len(cli.REGISTRY) >= 15
    assert {"ex2.4", "ex2.9", "ex3.4", "ex4.12", "prop4.15", "thm5.1-remez"} <= set(cli.REGISTRY)


def test_list_cases_json(capsys):
    code, out, _ = run(capsys, "list-cases", "--json")
    assert code == 0
    assert [c["id"] for c in json.loads(out)["cases"]] == list(cli.REGISTRY)


def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify", "all", "--json")
    report = json.loads(out)
    failed = [c["id"] for c in report["cases"] if not c["passed"]]
    assert code == 0 and report["passed"], failed


def test_verify_prints_seed_and_is_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "ex2.4", "--seed", "7")
    _, second, _ = run(capsys, "verify", "ex2.4", "--seed", "7")
    assert first.splitlines()[0] == "# seed 7" and first == second


def test_failing_check_exits_one(capsys, monkeypatch):
    case = cli.REGISTRY["ex2.5"]
    broken = dataclasses.replace(case, run=lambda seed: [cli.Check("always fails", False, "TRIVIAL")])
    monkeypatch.setitem(cli.REGISTRY, "ex2.5", broken)
    code, out, _ = run(capsys, "verify", "ex2.5")
    assert code == 1 and "FAIL" in out


def test_crashing_case_is_a_failure(capsys, monkeypatch):
    def boom(seed):
        raise ArithmeticError("no")

    monkeypatch.setitem(cli.REGISTRY, "ex2.5", dataclasses.replace(cli.REGISTRY["ex2.5"], run=boom))
    assert run(capsys, "verify", "ex2.5")[0] == 1


@pytest.mark.parametrize("argv", [
    ["verify", "nope"],
    ["solve", "project", "--set", "{bad", "--point", "[1]"],
    ["solve", "project", "--set", '{"variant": "torus"}', "--point", "[1]"],
    ["solve", "project", "--set", '{"variant": "ball", "param": "1"}', "--point", "[1]"],
    ["solve", "project", "--set", '{"variant": "ball"}', "--point", "[1]"],
    ["solve", "gproject", "--set", HYPERPLANE, "--point", "[1]", "--oracle", "--budget", "5"],
    ["remez", "t +", "1"],
    ["remez", "t", "-1"],
    ["duality", "--beta", "x"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["solve", "nonsense"])
    assert exc.value.code == 2


def test_solve_json_report(capsys):
    code, out, _ = run(capsys, "solve", "gproject", "--set", HYPERPLANE, "--point", "[3, 1]", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["value"] == "15/4" and report["minimizer"] == {"entries": {"1": "5/4", "3": "-1/4"}}
    assert set(report) >= {"value", "minimizer", "attained", "set_tag", "budget", "witnesses"}


def test_solve_with_grid_oracle_and_l2(capsys):
    code, out, _ = run(capsys, "solve", "project", "--set", SIMPLEX2, "--point", "[2, 1]",
                       "--oracle", "--l2", "--numeric", "--json")
    report = json.loads(out)
    assert code == 0 and report["value"] == "2" and report["oracle_value"] == "2"
    assert report["l2"]["coincide"] and report["numeric_value"] == 2.0


def test_oracle_disagreement_exits_three(capsys, monkeypatch):
    def inflated(c, x, budget=None):
        return dataclasses.replace(metric_project(c, x, budget=budget), optimal_value=99)

    monkeypatch.setattr(cli, "metric_project", inflated)
    code, _, err = run(capsys, "solve", "project", "--set", SIMPLEX2, "--point", "[2, 1]", "--oracle")
    assert code == 3 and "mismatch" in err


def test_remez_outputs(capsys):
    code, out, _ = run(capsys, "remez", "t^2", "1", "--json")
    report = json.loads(out)
    assert code == 0 and abs(report["level"] - 0.125) < 1e-9 and report["equioscillation"]
    code, out, _ = run(capsys, "remez", "t^2", "1", "--csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "t,residual" and len(lines) > 100


def test_duality_and_identical(capsys):
    _, out, _ = run(capsys, "duality", "--point", "[1, -2]", "--json")
    assert json.loads(out)["fixed"] == {"1": "3", "2": "-3"}
    _, out, _ = run(capsys, "duality", "--beta", "2", "--json")
    assert json.loads(out)["with_zero_slot"] is True
    _, out, _ = run(capsys, "identical", "[1, 0]", '["1/2", "1/2"]', "--json")
    assert json.loads(out) == {"identical": True}
    _, out, _ = run(capsys, "identical", "[1, 0]", "[1, 1]", "--json")
    assert json.loads(out) == {"identical": False}


def test_vi_check_commands(capsys):
    code, out, _ = run(capsys, "vi-check", "gen", "--set", HYPERPLANE, "--point", "[3, 1]", "--z", "[1]", "--json")
    report = json.loads(out)
    assert code == 0 and not report["holds_for_some_j"]
    assert report["violating_y"] == {"entries": {"1": "2", "3": "-1"}}
    code, out, _ = run(capsys, "vi-check", "metric", "--set", HYPERPLANE, "--point", "[3]", "--z", "[2, -1]",
                       "--json")
    assert code == 0 and json.loads(out)["holds_for_some_j"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "genproj", "verify", "ex2.4"], capture_output=True, text=True)
    assert proc.returncode == 0 and "summary  PASS" in proc.stdout
