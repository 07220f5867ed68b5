import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from groupoidlp.cli import main

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_verify_pair_two_passes():
    code, text = run("verify", "--model", str(FIX / "pair2.json"))
    assert code == 0
    report = json.loads(text)
    assert report["summary"]["failed"] == 0 and report["summary"]["checks"] > 0
    assert {c["status"] for c in report["checks"]} <= {"PASS", "SKIP"}


def test_verify_single_suite():
    code, text = run("verify", "--model", str(FIX / "z2_twisted.json"), "--suite", "twist")
    assert code == 0
    assert {c["suite"] for c in json.loads(text)["checks"]} == {"twist"}


def test_bad_cocycle_exits_one():
    code, text = run("verify", "--model", str(FIX / "broken" / "bad_cocycle.json"))
    assert code == 1
    report = json.loads(text)
    failed = [c for c in report["checks"] if c["status"] == "FAIL"]
    assert failed and failed[0]["witness"] is not None


def test_bad_edge_exits_two():
    code, _ = run("verify", "--model", str(FIX / "broken" / "bad_edge.json"))
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["verify", "--model", "does/not/exist.json"],
    ["verify", "--model", str(FIX / "pair2.json"), "--suite", "nonsense"],
    ["verify", "--model", str(FIX / "pair2.json"), "--p", "1/0"],
    ["verify", "--model", str(FIX / "pair2.json"), "--jobs", "0"],
    ["graph", "--model", str(FIX / "pair2.json")],
    ["frobnicate"],
])
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_norm_on_pair_two_with_inline_element():
    code, text = run("norm", "--model", str(FIX / "pair2.json"), "--p", "1,2,inf",
                     "--element", "[[[0,0],1],[[0,1],1],[[1,0],1],[[1,1],1]]", "--semigroup", "singletons")
    assert code == 0
    rows = json.loads(text)["norms"]
    by_p = {r["p"]: r for r in rows}
    assert by_p["1"]["lower"] == by_p["1"]["upper"] == "2"
    assert by_p["inf"]["upper"] == "2"
    assert float(by_p["2"]["upper"]) == pytest.approx(2.0)
    assert by_p["1"]["projective"] == "4"


def test_norm_csv():
    code, text = run("norm", "--model", str(FIX / "pair2.json"), "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows and set(rows[0]) >= {"model", "p", "lower", "upper", "interp", "inorm", "projective"}


def test_graph_command_reports_boundary():
    code, text = run("graph", "--model", str(FIX / "graph_two_edges.json"))
    assert code == 0
    info = json.loads(text)["models"][0]
    assert sorted(map(tuple, info["boundary_paths"])) == [("e",), ("f",), ("w",)]
    assert info["groupoid_arrows"] == 9
    assert info["vertices"] == {"u": "regular", "w": "source"}


def test_crossprod_command():
    code, text = run("crossprod", "--model", str(FIX / "partial_z2_twisted.json"))
    assert code == 0


def test_tight_command_on_semigroup():
    code, text = run("tight", "--model", str(FIX / "brandt.json"))
    assert code == 0
    assert json.loads(text)["models"][0]["tight_characters"] == 2


def test_csv_and_json_are_deterministic():
    args = ["verify", "--model", str(FIX / "z3_twisted.json"), "--seed", "3"]
    assert run(*args) == run(*args)
    assert run(*args, "--format", "csv") == run(*args, "--format", "csv")


def test_jobs_do_not_change_the_report():
    base = ["verify", "--model", str(FIX / "pair2.json"), "--model", str(FIX / "brandt.json")]
    one = json.loads(run(*base, "--jobs", "1")[1])
    three = json.loads(run(*base, "--jobs", "3")[1])
    assert one["checks"] == three["checks"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "groupoidlp", "verify", "--model", str(FIX / "pair2.json"),
                           "--suite", "axioms"], capture_output=True, text=True, cwd=ROOT)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["failed"] == 0
