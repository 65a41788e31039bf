import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from colorhom import corpus
from colorhom.cli import main
from colorhom.fileio import load_algebra


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, _ = run(*argv)
    return code, json.loads(out)


def path(name):
    return str(corpus.corpus_path(name))


def write(tmp_path, doc, name="a.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc, encoding="utf-8")
    return str(p)


def test_validate_ok():
    code, rep = report("validate", "corpus/sl2.json")
    assert code == 0
    assert rep["tool_version"] == "colorhom-report/1"
    assert rep["input_hash"].startswith("sha256:")
    assert [c["status"] for c in rep["checks"]] == ["pass"] * 4


def test_validate_invalid_exit_1(tmp_path):
    doc = json.loads(corpus.corpus_path("sl2").read_text())
    doc["alpha"] = [["2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    code, rep = report("validate", write(tmp_path, doc))
    assert code == 1
    assert {c["id"]: c["status"] for c in rep["checks"]}["multiplicative"] == "fail"


def test_solve_heis3():
    code, rep = report("solve", "corpus/heis3.json", "--space", "der", "--k", "0")
    assert code == 0 and rep["result"]["total"] == 2
    code, rep = report("solve", "corpus/heis3.json", "--space", "der", "--k", "0",
                       "--no-commute-alpha")
    assert code == 0 and rep["result"]["dims"] == {"0": 6} and rep["result"]["total"] == 6


def test_solve_heis3_identity_alpha(tmp_path):
    doc = json.loads(corpus.corpus_path("heis3").read_text())
    doc["alpha"] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    code, rep = report("solve", write(tmp_path, doc), "--space", "der", "--k", "0")
    assert code == 0 and rep["result"]["total"] == 6


def test_solve_degrees():
    code, rep = report("solve", path("super-osc"), "--space", "zder", "--degree", "1")
    assert code == 0 and rep["result"]["dims"] == {"1": 1}
    code, rep = report("solve", path("super-osc"), "--space", "zder", "--all-degrees")
    assert rep["result"]["dims"] == {"0": 0, "1": 1}
    code, rep = report("solve", path("sl2"), "--space", "qder")
    assert "witnesses" in rep["result"]["spaces"]["0"]
    assert run("solve", path("super-osc"), "--space", "der", "--degree", "1,0")[0] == 2
    assert run("solve", path("sl2"), "--space", "der", "--degree", "1")[0] == 2


def test_check():
    code, rep = report("check", path("sl2"), "--identity", "hom_jacobi(2)", "--identity", "hom_lie")
    assert code == 0 and len(rep["checks"]) == 3
    code, rep = report("check", path("sl2"), "--identity", "hom_associative(2)")
    assert code == 1 and rep["checks"][0]["witness"]["basis_indices"]
    assert run("check", path("sl2"), "--identity", "bogus")[0] == 2
    assert run("check", path("sl2"), "--identity", "skew(3)")[0] == 2


def test_check_file(tmp_path):
    p = write(tmp_path, "# antisymmetry\n[x1,x2] + [x2,x1]\n\n[x1,[x2,x3]] + [x2,[x3,x1]] + [x3,[x1,x2]]\n",
              "ids.txt")
    code, rep = report("check", path("sl2"), "--identity", "@" + p)
    assert code == 0 and len(rep["checks"]) == 2
    bad = write(tmp_path, "[x1,x1]\n", "bad.txt")
    code, _, err = run("check", path("sl2"), "--identity", "@" + bad)
    assert code == 2 and "bad.txt:1" in err


def test_ann_and_derived():
    code, rep = report("ann", path("heis3"))
    assert rep["result"]["ann"] == {"ambient_dim": 3, "dim": 1, "basis": [["0", "0", "1"]]}
    code, rep = report("derived", path("heis3"))
    assert rep["result"]["derived"]["basis"] == [["0", "0", "1"]]
    assert rep["result"]["complement"]["dim"] == 2


def test_extend(tmp_path):
    out = tmp_path / "ext.json"
    code, rep = report("extend", path("heis3"), "-o", str(out))
    assert code == 0 and rep["result"]["dim"] == 6
    ext = load_algebra(out)
    assert ext.dim == 6 and ext.basis_names[3] == "e1·t^n"
    code, text, _ = run("extend", path("heis3"))
    assert code == 0 and json.loads(text)["name"] == "heis3-ext"


def test_verify_trivial2():
    code, rep = report("verify", "corpus/trivial2.json", "--lemmas", "all", "--kmax", "1")
    assert code == 0
    status = {c["id"]: c["status"] for c in rep["checks"]}
    assert status["2.5:zero"] == "skipped" and status["3.5"] == "skipped"
    assert status["3.4-3"] == "pass"
    assert "skipped" not in {status[k] for k in status if k.startswith("2.2")}
    assert rep["result"]["embedding"]["notes"] == ["t is given degree 0 in the grading group"]


def test_verify_subset():
    code, rep = report("verify", path("sl2"), "--lemmas", "2.6,3.5", "--kmax", "1")
    assert code == 0
    assert {c["id"].split(":")[0] for c in rep["checks"]} == {"2.6", "3.5"}
    assert run("verify", path("sl2"), "--lemmas", "2.4")[0] == 2


@pytest.mark.parametrize("doc, fragment", [
    ("{not json", "invalid JSON"),
    ({"arity": 2, "group": {"cyclic_orders": [2]}, "degrees": [[0], [1, 0]],
      "bicharacter": [["1"]]}, "$.degrees[1]"),
    ({"arity": 2, "group": {"cyclic_orders": []}, "degrees": [[], []], "bicharacter": [],
      "brackets": [{"args": [0, 1], "value": [{"idx": 0, "c": "1/0"}]}]}, "zero denominator"),
    ({"arity": 2, "group": {"cyclic_orders": []}, "degrees": [[]], "bicharacter": [],
      "brackets": [{"args": [0, 0], "value": []}, {"args": [0, 0], "value": []}]}, "duplicate"),
    ({"arity": 2, "group": {"cyclic_orders": []}, "degrees": [[]], "bicharacter": [],
      "brackets": [{"args": [0, 0], "value": [{"idx": 0, "c": 0.5}]}]}, "rational"),
    ({"arity": 2, "group": {"cyclic_orders": []}, "degrees": [[]], "bicharacter": [],
      "brackets": [{"args": [0, 3], "value": []}]}, "args"),
])
def test_malformed_files_exit_2(tmp_path, doc, fragment):
    code, out, err = run("validate", write(tmp_path, doc))
    assert code == 2 and out == ""
    assert fragment in err


def test_usage_errors():
    assert run("solve", path("sl2"))[0] == 2  # missing --space
    assert run("solve", path("sl2"), "--space", "der", "--k", "-1")[0] == 2
    assert run("validate", "missing.json")[0] == 2
    assert run()[0] == 2


def test_report_deterministic():
    a = run("report", path("hom-sl2"), "--kmax", "1")
    b = run("report", path("hom-sl2"), "--kmax", "1")
    assert a[0] == 0 and a[1] == b[1]
    rep = json.loads(a[1])
    assert set(rep["result"]["spaces"]) == {"zder", "der", "qder", "gder", "c", "qc"}
    assert list(rep) == sorted(rep)


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "colorhom", "validate", "corpus/sl2.json"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["result"]["valid"]
