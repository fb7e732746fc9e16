import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

BIN = os.environ.get("TILELAB_BIN", "build/tools/tilelab")
ROOT = Path(os.environ.get("TILELAB_ROOT", Path(__file__).resolve().parents[2]))
DATA = ROOT / "data"
SCHEMAS = ROOT / "schemas"


def run(*args, code=None):
    proc = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, timeout=600)
    if code is not None:
        assert proc.returncode == code, proc.stdout + proc.stderr
    return proc


def doc(*args, code=0, schema=None):
    proc = run(*args, code=code)
    out = json.loads(proc.stdout)
    if schema:
        jsonschema.validate(out, json.loads((SCHEMAS / f"{schema}.json").read_text()))
    return out


def test_verify_sample_grid():
    out = doc("puzzle", "verify", "--in", DATA / "ex1.txt", "--seq", "RDDRD", schema="puzzle_verify")
    assert out["valid"] and out["within_budget"]
    assert out["budget"] == "152"


def test_verify_wrong_sequence_is_negative():
    out = doc("puzzle", "verify", "--in", DATA / "ex1.txt", "--seq", "RDDR", code=1, schema="puzzle_verify")
    assert not out["valid"]


def test_verify_reports_first_illegal_step():
    out = doc("puzzle", "verify", "--in", DATA / "goal4.txt", "--seq", "UUR", code=1, schema="puzzle_verify")
    assert out["first_illegal_step"] == 3  # 1-based: R pushes the blank off the board


def test_solve_goal_is_empty():
    out = doc("puzzle", "solve", "--in", DATA / "goal4.txt", schema="puzzle_solve")
    assert out["psi"] == 0 and out["seq"] == ""


@pytest.mark.parametrize("algo", ["bfs", "ida", "exhaust"])
def test_solve_sample_grid_every_algorithm(algo):
    out = doc("puzzle", "solve", "--in", DATA / "ex1.txt", "--algo", algo, "--kmax", "6", schema="puzzle_solve")
    assert out["psi"] == 5
    again = doc("puzzle", "verify", "--in", DATA / "ex1.txt", "--seq", out["seq"])
    assert again["valid"]


def test_solve_unsolvable_is_negative():
    out = doc("puzzle", "solve", "--grid", "2 1/3 _", code=1, schema="puzzle_solve")
    assert out["solvable"] is False and out["psi"] is None


def test_enumerate_two_by_two():
    out = doc("puzzle", "enumerate", "--n", "2", schema="puzzle_enumerate")
    assert (out["count"], out["diameter"]) == (12, 6)
    assert sum(out["depth_histogram"]) == 12


def test_enumerate_writes_states(tmp_path):
    target = tmp_path / "states.txt"
    doc("puzzle", "enumerate", "--n", "2", "--out", target)
    assert target.read_text().strip()


def test_enumerate_state_cap_is_resource_error():
    out = doc("puzzle", "enumerate", "--n", "3", "--max-states", "10", code=3, schema="error")
    assert out["error"]["kind"] == "resource_limit"


def test_bounds_three_by_three():
    out = doc("puzzle", "bounds", "--n", "3", schema="puzzle_bounds")
    assert (out["count"], out["diameter"]) == (181440, 31)
    assert out["bounds"]["thm3"] == "82948"
    assert out["verdicts"]["lemma1"] == "holds"


def test_bounds_large_n_is_formula_only():
    out = doc("puzzle", "bounds", "--n", "6", schema="puzzle_bounds")
    assert out["count"] is None
    assert set(out["verdicts"].values()) == {"untested"}


def test_cost_with_ledger():
    out = doc("puzzle", "cost", "--in", DATA / "ex1.txt", "--seq", "RDDRD", "--emit-ledger", "--program-length", "5",
              schema="puzzle_cost")
    assert out["within"] and out["valid"] and out["polytime_witness"]
    assert sum(out["per_primitive"].values()) >= out["decisions"]


def test_exhaust_reports_both_ceilings():
    out = doc("puzzle", "exhaust", "--grid", "1 2/_ 3", "--kmax", "2", schema="puzzle_exhaust")
    assert out["found"] and out["seq"] == "R"
    assert out["within_summed"]


def test_exhaust_not_found_is_negative():
    out = doc("puzzle", "exhaust", "--grid", "2 1/3 _", "--kmax", "2", code=1, schema="puzzle_exhaust")
    assert not out["found"]


def test_roots_cubic_with_pi():
    out = doc("roots", "find", "--in", DATA / "cubic_pi.txt", schema="roots_find")
    assert out["tau"] == 3 and out["case"] == "1,1,1"
    assert out["oracle_agrees"] is True
    assert [o["status"] for o in out["outcomes"]] == ["inconsistent", "inconsistent", "solved"]


def test_roots_without_real_roots_is_negative():
    out = doc("roots", "find", "--poly", "1,0,1", code=1, schema="roots_find")
    assert out["tau"] == 0 and out["case"] == "|2"


def test_roots_complex_mode():
    out = doc("roots", "find", "--poly", "1,0,1", "--mode", "complex", schema="roots_find")
    values = sorted((r["value"]["re"], r["value"]["im"]) for r in out["roots"])
    assert values == pytest.approx([(0, -1), (0, 1)], abs=1e-9)


def test_roots_repeated_root():
    out = doc("roots", "find", "--poly", "-2,5,-4,1", schema="roots_find")
    assert [(r["value"], r["mult"]) for r in out["roots"]] == [(1.0, 2), (2.0, 1)]


def test_roots_verify_candidate():
    out = doc("roots", "verify", "--poly", "-2,5,-4,1", "--root", "1", schema="roots_verify")
    assert out["is_root"] and out["multiplicity"] == 2
    out = doc("roots", "verify", "--poly", "-2,5,-4,1", "--root", "3", code=1, schema="roots_verify")
    assert not out["is_root"]


def test_roots_cases_order():
    real = doc("roots", "cases", "--degree", "3", schema="roots_cases")
    assert [p["label"] for p in real["patterns"]][:3] == ["3", "2,1", "1,1,1"]
    cplx = doc("roots", "cases", "--degree", "3", "--mode", "complex", schema="roots_cases")
    assert [p["label"] for p in cplx["patterns"]] == ["1,1,1", "2,1", "3"]


def test_report_over_sample_corpus():
    out = doc("report", "--n", "2", "--corpus", DATA / "corpus.txt", schema="report")
    assert out["bounds"][0]["count"] == 12 and out["bounds"][0]["diameter"] == 6
    assert out["norm_violations"] == 1
    assert len(out["polynomials"]) == 4


def test_report_empty_corpus(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing here\n")
    out = doc("report", "--n", "2", "--corpus", empty, schema="report")
    assert out["polynomials"] == [] and out["norm_checks"] == []


def test_report_norm_check_alone(tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("1,1 ; 1,1\n")
    out = doc("report", "--n", "2", "--corpus", corpus, schema="report")
    assert out["norm_violations"] == 1
    assert (out["norm_checks"][0]["lhs"], out["norm_checks"][0]["rhs"]) == ("2", "1")


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["puzzle"],
        ["puzzle", "verify", "--grid", "1 2/3 _"],
        ["puzzle", "verify", "--grid", "1 1/3 _", "--seq", "U"],
        ["puzzle", "verify", "--grid", "1 2/3 _", "--seq", "UX"],
        ["roots", "find", "--poly", "7"],
        ["roots", "find", "--poly", "1,abc"],
        ["puzzle", "enumerate", "--n", "9"],
        ["--format", "yaml", "puzzle", "enumerate", "--n", "2"],
    ],
)
def test_usage_and_input_errors(args):
    proc = run(*args, code=2)
    if "--format" not in args:
        jsonschema.validate(json.loads(proc.stdout), json.loads((SCHEMAS / "error.json").read_text()))


def test_text_format():
    proc = run("--format", "text", "puzzle", "enumerate", "--n", "2", code=0)
    assert "12" in proc.stdout
    with pytest.raises(json.JSONDecodeError):
        json.loads(proc.stdout)


@pytest.mark.parametrize(
    "args",
    [
        ["roots", "find", "--poly", "pi/2,-pi^2,0,2"],
        ["roots", "find", "--poly", "-1,0,0,0,1", "--mode", "complex"],
        ["report", "--n", "2", "--corpus", str(DATA / "corpus.txt")],
    ],
)
def test_output_is_deterministic(args):
    assert run(*args).stdout == run(*args).stdout
