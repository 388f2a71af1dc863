from __future__ import annotations

import json

from cyclochar import lab
from cyclochar.cli import EMITTABLE, main
from cyclochar.serialize import parse


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_emit_tf_latex(capsys):
    code, out = run(capsys, "emit", "TF-H1", "--format", "latex")
    assert code == 0
    assert out.strip() == r"1\otimes X\otimes Y - 1\otimes Y\otimes X - 1\otimes \delta_1 Y\otimes Y"


def test_emit_chi_r4_json(capsys):
    code, out = run(capsys, "emit", "chi-R4", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["kind"] == "elementary" and obj["degree"] == 2
    assert sorted(t["coeff"] for t in obj["terms"]) == ["-1", "-1", "1", "1"]


def test_emit_round_trip(capsys, tmp_path):
    expected = lab.codim1_phi().as_vector()
    for fmt in ("text", "json"):
        path = tmp_path / f"phi.{fmt}"
        code, out = run(capsys, "emit", "codim1-phi", "--format", fmt, "--out", str(path))
        assert code == 0 and out == ""
        _, printed = run(capsys, "emit", "codim1-phi", "--format", fmt)
        assert path.read_text() == printed
        assert parse(printed, fmt).vector == expected


def test_every_name_is_emittable():
    assert {"codim1-phi", "codim2-phi", "TF-H1", "TF-H2", "GV", "R1", "R2", "R3", "R4",
            "chi-GV", "chi-R1", "chi-R2", "chi-R3", "chi-R4"} <= set(EMITTABLE)


def test_verify_beta(capsys):
    code, out = run(capsys, "verify", "codim2-beta")
    assert code == 0
    for line in ("beta1 = -r", "beta2 = -r", "beta6 = -s", "beta8 = -r - s", "beta9 = 1/2 r + s"):
        assert line in out


def test_verify_fundamental_class(capsys):
    code, out = run(capsys, "verify", "fundamental-class", "--codim", "1")
    assert code == 0
    assert "1 | 1 | X_1 | Y_1^1" in out
    assert "-1 | 1 | d^1_{1,1} Y_1^1 | Y_1^1" in out


def test_verify_identity_suite_is_deterministic(capsys):
    args = ("verify", "identity-suite", "--codim", "2", "--seed", "7", "--max-degree", "2")
    code, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert code == 0 and first == second


def test_verify_json(capsys):
    code, out = run(capsys, "verify", "codim1-cocycle", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["passed"] and obj["tasks"][0]["task"] == "codim1-cocycle"


def test_failing_task_exits_one(capsys):
    code, out = run(capsys, "verify", "codim2-cocycle")
    assert code == 1
    assert "[FAIL] b(primitive) = s-part" in out


def test_usage_errors_exit_two(capsys):
    assert main(["verify", "no-such-task"]) == 2
    assert main(["emit", "no-such-element"]) == 2
    assert main([]) == 2
    assert main(["verify", "hopf-axioms", "--max-degree", "-1"]) == 2
    capsys.readouterr()
