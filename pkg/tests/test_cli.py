import io
import json
import subprocess
import sys

import pytest

from make_golden import CASES, HERE, render
from qborel.cli import run

FIX = HERE / "fixtures"


def call(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_reports(name):
    _, text = render(CASES[name])
    assert text == (HERE / "golden" / f"{name}.json").read_text()


@pytest.mark.parametrize("argv, code", [
    (["check", "--input", str(FIX / "fixA.qv")], 0),
    (["check", "--input", str(FIX / "fixC.qv")], 1),
    (["regularity", "--input", str(FIX / "fixA.qv")], 1),
    (["regularity", "--input", str(FIX / "fixE.qv")], 0),
    (["regularity", "--input", str(FIX / "fixC.qv")], 1),
    (["reedy", "--input", str(FIX / "fixC.qv")], 1),
    (["verify-borel", "--input", str(FIX / "fixA.qv")], 0),
    (["verify-borel", "--input", str(FIX / "fixA.qv"), "--span", "e_1,e_2,e_3,alpha,gamma+alpha.beta"], 0),
    (["verify-borel", "--input", str(FIX / "fixA.qv"), "--span", "e_1,e_2,e_3,alpha"], 1),
    (["truncate", "--input", str(FIX / "fixB.qv"), "--cutoff", "3"], 0),
    (["quotient", "--input", str(FIX / "fixE.qv"), "--gens", "gamma"], 0),
    (["family", "--na", "1", "--nb", "1", "--nc", "1"], 1),
    (["census", "--input", str(FIX / "missing.qv")], 2),
    (["check", "--spec", "quiver q { vertices: 1; arrows: a: 1 -> 9; }"], 2),
    (["check", "--spec", "quiver q { vertices: 1 2; }"], 2),
    (["family", "--na", "5", "--nb", "5", "--nc", "5"], 2),
    (["ext", "--input", str(FIX / "fixA.qv"), "--i", "1", "--j", "7"], 2),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_quotient_reports_regularity():
    for gen in ("gamma", "e_3"):
        code, out, _ = call("quotient", "--json", "--input", str(FIX / "fixE.qv"), "--gens", gen)
        assert code == 0
        assert json.loads(out)["payload"]["regular"] is False


def test_errors_go_to_stderr():
    code, out, err = call("census", "--input", str(FIX / "missing.qv"))
    assert code == 2 and out == "" and err.startswith("error:")


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        call("borel")
    assert exc.value.code == 2


def test_plain_text_output():
    code, out, _ = call("regularity", "--input", str(FIX / "fixA.qv"))
    assert "gamma" in out and "beta" in out


def test_json_identical_across_threads():
    args = ["census", "--json", "--input", str(FIX / "fixD.qv")]
    one = call(*args, "--threads", "1")[1]
    four = call(*args, "--threads", "4")[1]
    assert one == four
    assert json.loads(one)["payload"]["totals"]["classes"] == 13


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("QB_THREADS", "2")
    assert call("census", "--input", str(FIX / "fixD.qv"))[0] == 0
    monkeypatch.setenv("QB_THREADS", "many")
    assert call("census", "--input", str(FIX / "fixD.qv"))[0] == 2


def test_stdin_input():
    text = (FIX / "fixA.qv").read_text()
    proc = subprocess.run([sys.executable, "-m", "qborel", "check", "--input", "-", "--json"],
                          input=text, capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "check"
