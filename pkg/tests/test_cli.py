import json
import subprocess
import sys
import textwrap

import pytest

from hochwerk.cli import (SCHEMA, main, records_from_json, records_to_json, run_task)
from hochwerk.instance import bundled_path, parse_instance

BAD_ASSOC = textwrap.dedent('''
    [algebras.Bad]
    dim = 2
    mult = [[[0, 1], [1, 0]], [[0, 0], [0, 0]]]
    ''')

M2_INSTANCE = textwrap.dedent('''
    [algebras.M2]
    builtin = "matrix"
    n = 2

    [algebras.Q]
    builtin = "ground_field"

    [bimodules.C]
    left = "M2"
    builtin = "column"
    n = 2

    [triangular.T]
    a = "M2"
    m = "C"
    b = "Q"

    [[tasks]]
    op = "thm3.1"
    triangular = "T"
    coeff = "T*"
    max_degree = 3
    ''')


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_all_on_bundled(capsys):
    code, out, _ = run(["verify", "--suite", "all", "--max-degree", "3"], capsys)
    assert code == 0
    assert "mismatch" not in out
    for suite in ("thm3.1", "cor3.2", "thm3.3", "cor3.4", "cor3.5", "thm3.6", "thm3.8"):
        assert suite in out


def test_cohomology_command(capsys):
    code, out, _ = run(["cohomology", "--algebra", "T", "--coeff", "T", "--max-degree", "3",
                        "--format", "records"], capsys)
    assert code == 0
    assert json.loads(out)["records"][0]["lhs"] == [1, 0, 0, 0]
    code, out, _ = run(["homology", "--algebra", "T", "--coeff", "T", "--max-degree", "3",
                        "--format", "records"], capsys)
    assert json.loads(out)["records"][0]["lhs"] == [2, 0, 0, 0]


def test_other_commands(capsys):
    assert run(["duality", "--algebra", "T", "--coeff", "T", "--max-degree", "2"], capsys)[0] == 0
    assert run(["ext", "--algebra", "Q", "--module", "M", "--target", "M"], capsys)[0] == 0
    code, out, _ = run(["trace", "--algebra", "T", "--format", "records"], capsys)
    assert code == 0 and json.loads(out)["records"][0]["lhs"] == [2]


def test_deterministic_output(capsys, tmp_path):
    argv = ["verify", "--suite", "all", "--format", "records"]
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second


def test_records_round_trip(capsys, tmp_path):
    out_file = tmp_path / "records.json"
    code, table, _ = run(["verify", "--suite", "all", "--out", str(out_file)], capsys)
    assert code == 0 and table.startswith("suite")
    text = out_file.read_text()
    assert json.loads(text)["schema"] == SCHEMA
    records = records_from_json(text)
    assert records_to_json(records) == text
    inst = parse_instance(bundled_path())
    direct = [run_task(inst, t) for t in inst.tasks]
    assert records == direct


def test_timings_are_opt_in(capsys):
    out = run(["verify", "--suite", "thm3.6", "--format", "records"], capsys)[1]
    assert "seconds" not in out
    out = run(["verify", "--suite", "thm3.6", "--format", "records", "--timings"], capsys)[1]
    assert "seconds" in json.loads(out)["records"][0]


def test_input_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text(BAD_ASSOC)
    code, _, err = run(["verify", "--instance", str(bad)], capsys)
    assert code == 2 and "NotAssociative" in err
    code, _, err = run(["verify", "--instance", str(tmp_path / "missing.toml")], capsys)
    assert code == 2
    code, _, _ = run(["cohomology", "--algebra", "Nope"], capsys)
    assert code == 2


def test_hypothesis_violation_exit_2(capsys, tmp_path):
    f = tmp_path / "viol.toml"
    f.write_text(bundled_path().read_text().split("[[tasks]]")[0]
                 + '[[tasks]]\nop = "thm3.1"\ntriangular = "T"\ncoeff = "T"\n')
    code, _, err = run(["verify", "--instance", str(f)], capsys)
    assert code == 2 and "X_AB" in err


def test_budget(capsys, tmp_path, monkeypatch):
    f = tmp_path / "m2.toml"
    f.write_text(M2_INSTANCE)
    # 7^5 = 16807 fits the default cap
    assert run(["verify", "--instance", str(f), "--suite", "thm3.1", "--budget", "100"],
               capsys)[0] == 3
    monkeypatch.setenv("HOCHWERK_BUDGET", "100")
    assert run(["verify", "--instance", str(f), "--suite", "thm3.1"], capsys)[0] == 3
    assert run(["verify", "--instance", str(f), "--suite", "thm3.1", "--max-degree", "1",
                "--force"], capsys)[0] == 0
    monkeypatch.setenv("HOCHWERK_BUDGET", "lots")
    assert run(["verify", "--instance", str(f)], capsys)[0] == 2


def test_default_tasks_when_file_has_none(capsys, tmp_path):
    f = tmp_path / "plain.toml"
    f.write_text(M2_INSTANCE.split("[[tasks]]")[0])
    code, out, _ = run(["verify", "--instance", str(f), "--suite", "thm3.6"], capsys)
    assert code == 0 and "thm3.6" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hochwerk.cli", "verify", "--suite", "cor3.2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "cor3.2" in proc.stdout
