import json
import shutil
import subprocess
import sys

import pytest

from hopfchar.battery import MUTATIONS, ROWS
from hopfchar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_group_info(capsys):
    code, rep, err = run(capsys, "group-info", "--group", "S3", "--subgroup", "A3")
    assert code == 0
    assert rep["order"] == 6 and not rep["abelian"]
    assert sorted(map(len, rep["conjugacy_classes"])) == [1, 2, 3]
    assert len(rep["coset_representatives"]) == 2
    assert "S3 of order 6" in err


def test_adjoint_group_mode(capsys):
    code, rep, _ = run(capsys, "adjoint", "--group", "S3", "--subgroup", "A3")
    assert code == 0
    assert rep["dim"] == rep["dim_hopf"] == 6
    assert rep["basis"][0]["name"].startswith("alpha[")
    assert all(v["status"] == "pass" for v in rep["checks"].values())


def test_adjoint_dual_mode_full(capsys):
    code, rep, _ = run(capsys, "adjoint", "--mode", "dual-group", "--group", "Klein", "--cocycle", "Klein-pauli",
                       "--rep", "Klein-pauli", "--check-level", "full")
    assert code == 0
    assert rep["dim"] == 4 and set(rep["tf"]) == {"e", "a", "b", "ab"}
    assert rep["checks"]["universal-property"]["status"] == "pass"


def test_adjoint_generic_mode(capsys):
    code, rep, _ = run(capsys, "adjoint", "--mode", "generic", "--hopf", "sweedler", "--algebra", "sweedler-group-part")
    assert code == 2  # bare names are not paths
    from hopfchar.io import bundled_path

    code, rep, _ = run(capsys, "adjoint", "--mode", "generic", "--hopf", str(bundled_path("hopf", "sweedler.json")),
                       "--algebra", str(bundled_path("algebras", "sweedler-group-part.json")))
    assert code == 0 and rep["dim"] == 4


def test_classfun_modes(capsys):
    code, rep, _ = run(capsys, "classfun", "--group", "S3")
    assert code == 0 and rep["dim_cf"] == rep["dim_model"] == 3 and rep["match"]
    assert rep["group_theoretical"]["formula_vs_transport"] == "match"
    code, rep, _ = run(capsys, "classfun", "--group", "S3", "--subgroup", "A3")
    gt = rep["group_theoretical"]
    assert code == 0 and (gt["dim_end"], gt["dim_c1"]) == (6, 3) and gt["end_equals_c1"] is False
    code, rep, _ = run(capsys, "classfun", "--mode", "dual-group", "--group", "S3", "--subgroup", "A3", "--rep", "S3-A3-omega")
    assert code == 0 and rep["dim_cf"] == rep["dim_model"] == 2 and rep["model"] == "k^S"


def test_verify_suites(capsys):
    code, rep, err = run(capsys, "verify", "--suite", "examples")
    assert code == 0 and rep["pass"] and "0 failing" in err
    code, rep, _ = run(capsys, "verify", "--suite", "mutations")
    assert code == 1
    assert rep["failures_per_row"] == {row: 1 for row in ROWS}
    for inst in rep["instances"]:
        failing = [r for r, v in inst["rows"].items() if v["status"] == "fail"]
        assert failing == [MUTATIONS[inst["instance"]["mutate"]]]
        assert inst["rows"][failing[0]].get("witness")


@pytest.mark.parametrize("argv,msg", [
    (["adjoint"], "--group is required"),
    (["verify"], "nothing to verify"),
    (["adjoint", "--group", "nosuch"], "no such file"),
    (["adjoint", "--mode", "dual-group", "--group", "S3"], "needs --rep"),
    (["adjoint", "--mode", "generic"], "generic mode needs"),
    (["adjoint", "--group", "Klein", "--subgroup", "A", "--cocycle", "Klein-pauli"], "not on the chosen subgroup"),
    (["normalize-cocycle", "--group", "S3"], "needs --group and --cocycle"),
])
def test_input_errors_exit_2(capsys, argv, msg):
    code, rep, err = run(capsys, *argv)
    assert code == 2 and rep is None
    assert msg in err


def test_corrupted_files(tmp_path, capsys):
    bad = tmp_path / "c.json"
    bad.write_text('{"subgroup": ["e", "g"], "values": [[1, 1], [1, "zeta(two,1)"]]}')
    code, _, err = run(capsys, "adjoint", "--group", "C2", "--cocycle", str(bad))
    assert code == 2 and "values[1][1]" in err
    bad.write_text('{"subgroup": ["e", "g"],\n "values": [[1, 1] [1, 1]]}')
    code, _, err = run(capsys, "adjoint", "--group", "C2", "--cocycle", str(bad))
    assert code == 2 and "line 2" in err


def test_non_normalized_cocycle_and_normalizer(tmp_path, capsys):
    path = tmp_path / "sign.json"
    sign = [[1 if not ((i >> 1) & (j & 1)) else -1 for j in range(4)] for i in range(4)]
    path.write_text(json.dumps({"subgroup": ["e", "a", "b", "ab"], "values": sign}))
    code, _, err = run(capsys, "adjoint", "--group", "Klein", "--cocycle", str(path))
    assert code == 2 and "normalize-cocycle" in err
    code, rep, _ = run(capsys, "normalize-cocycle", "--group", "Klein", "--cocycle", str(path))
    assert code == 0 and rep["input_was_normalized"] is False
    fixed = tmp_path / "fixed.json"
    fixed.write_text(json.dumps(rep["cocycle"]))
    code, rep, _ = run(capsys, "adjoint", "--group", "Klein", "--cocycle", str(fixed))
    assert code == 0 and rep["dim"] == 4


def test_reports_are_deterministic(tmp_path, capsys):
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        assert main(["classfun", "--group", "D4", "--subgroup", "V", "--cocycle", "D4-V-pauli", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]


@pytest.mark.skipif(shutil.which("hopfchar") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["hopfchar", "group-info", "--group", "Q8"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["order"] == 8


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopfchar.cli", "group-info", "--group", "C4"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["abelian"] is True
