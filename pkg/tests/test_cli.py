import csv
import io
import json
import subprocess
import sys

import pytest

from smanifold.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_envelope_shape(capsys):
    code, env, _ = run_json(capsys, "torus", "--catalog", "torus-1")
    assert code == 0
    assert env["schema"] == "smk/1"
    assert set(env) == {"schema", "tool", "version", "command", "input", "payload", "verdicts", "ok"}
    assert env["ok"] is True


def test_torus_case5(capsys):
    code, env, _ = run_json(capsys, "torus", "--catalog", "torus-5")
    assert code == 0
    p = env["payload"]
    assert p["antipodal_number"] == 3
    bases = [c["base"] for c in p["polars"]["components"]]
    assert bases == [["0", "0"], ["1/3", "1/3"], ["2/3", "2/3"]]
    assert all(c["pole"] for c in p["polars"]["components"])


def test_torus_case8(capsys):
    code, env, _ = run_json(capsys, "torus", "--catalog", "torus-8")
    assert code == 0 and env["payload"]["antipodal_number"] == 1


def test_torus_point_option(capsys):
    code, env, _ = run_json(capsys, "torus", "--catalog", "torus-1", "--point", "1/4,0")
    assert code == 0
    assert env["payload"]["maximal_antipodal_set"][0] == ["1/4", "0"]


def test_torus_non_abelian_skips_inequality(capsys):
    code, env, _ = run_json(capsys, "torus", "--catalog", "torus-4")
    assert code == 0 and env["payload"]["inequality"].startswith("not applicable")


def test_not_isolated(tmp_path, capsys):
    f = tmp_path / "id.json"
    f.write_text(json.dumps({"dimension": 2, "generators": [[[1, 0], [0, 1]]]}))
    code, env, err = run_json(capsys, "torus", "--file", str(f))
    assert code == 1
    assert env["payload"]["error"]["type"] == "NotIsolated"
    assert "not discrete" in env["payload"]["error"]["message"]
    assert "NotIsolated" in err


def test_bad_catalog_is_usage_error(capsys):
    code, out, err = run(capsys, "torus", "--catalog", "torus-9")
    assert code == 2 and "unknown catalog id" in err and out == ""


def test_finite_s3(capsys):
    code, env, _ = run_json(capsys, "finite", "--catalog", "S3-involution")
    assert code == 0
    p = env["payload"]
    assert p["quandles"][0]["dihedral"] == "R3"
    assert env["verdicts"]["gq"] and env["verdicts"]["condition3"]
    assert p["axioms"]["condition2"] == "discrete: automatic"


def test_finite_z4(capsys):
    code, env, _ = run_json(capsys, "finite", "--catalog", "Z4-inversion")
    assert code == 0
    assert env["payload"]["antipodal"]["antipodal_number"] == 2


def test_finite_corrupted_table(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"group": {"cayley": [[0, 1, 2], [1, 2, 0], [2, 1, 0]]}, "gamma": [], "K": [0]}))
    code, env, _ = run_json(capsys, "finite", "--file", str(f))
    assert code == 1
    assert env["payload"]["error"]["witness"]["law"] == "associativity"


def test_finite_invalid_triple(tmp_path, capsys):
    # Z4 with inversion, K = {0, 1}: 1 is not fixed and K is not a subgroup
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"group": {"preset": "Z4"}, "gamma": [[0, 3, 2, 1]], "K": [0, 1]}))
    code, env, _ = run_json(capsys, "finite", "--file", str(f))
    assert code == 1 and env["verdicts"]["triple_valid"] is False
    assert env["payload"]["triple"]["witness"] is not None


def test_weyl_regular(capsys):
    code, env, _ = run_json(capsys, "weyl", "--type", "A", "--rank", "2", "--point", "2,0,-2")
    assert code == 0
    assert env["payload"]["antipodal_number"] == 6 and env["payload"]["pole_count"] == 6


def test_weyl_fundamental_weight(capsys):
    code, env, _ = run_json(capsys, "weyl", "--type", "A", "--rank", "2", "--point", "2/3,-1/3,-1/3")
    assert code == 0
    p = env["payload"]
    assert p["antipodal_number"] == 3
    assert [c["size"] for c in p["polar_classes"]] == [1, 2]
    assert p["polar_classes"][0]["points"] == [["2/3", "-1/3", "-1/3"]]


def test_weyl_file_input(tmp_path, capsys):
    f = tmp_path / "w.json"
    f.write_text(json.dumps({"type": "G", "rank": 2, "point": ["1", "2", "-3"]}))
    code, env, _ = run_json(capsys, "weyl", "--file", str(f))
    assert code == 0 and env["payload"]["antipodal_number"] == 12


def test_weyl_zero_point(capsys):
    code, env, _ = run_json(capsys, "weyl", "--type", "A", "--rank", "2", "--point", "0,0,0")
    assert code == 1 and env["payload"]["error"]["type"] == "ZeroPoint"


def test_weyl_unknown_type(capsys):
    code, _, err = run(capsys, "weyl", "--type", "Q", "--rank", "2", "--point", "1,-1")
    assert code == 2 and "unsupported" in err


def test_quandle_check_table(tmp_path, capsys):
    f = tmp_path / "q.json"
    f.write_text(json.dumps({"table": [[0, 2, 1], [2, 1, 0], [1, 0, 2]]}))
    code, env, _ = run_json(capsys, "quandle-check", "--file", str(f))
    assert code == 0 and env["payload"]["dihedral"] == "R3"
    f.write_text(json.dumps({"table": [[0, 1, 2], [0, 1, 2], [0, 1, 2]]}))
    code, env, _ = run_json(capsys, "quandle-check", "--file", str(f))
    assert code == 1 and env["verdicts"]["Q2"] is False


def test_quandle_check_torus(capsys):
    code, env, _ = run_json(capsys, "quandle-check", "--catalog", "torus-5", "--denominator-bound", "4")
    assert code == 0 and env["verdicts"]["gq"]


def test_byte_identical_output(capsys):
    outs = [run(capsys, "torus", "--catalog", "torus-2")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "finite", "--catalog", "S3-inner")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_timing_is_opt_in(capsys):
    _, env, _ = run_json(capsys, "torus", "--catalog", "torus-3", "--timing")
    assert "elapsed_s" in env["timing"]
    _, env, _ = run_json(capsys, "torus", "--catalog", "torus-3")
    assert "timing" not in env


def test_csv_and_text_formats(capsys):
    code, out, _ = run(capsys, "torus", "--catalog", "torus-6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["section", "key", "value"]
    assert ["verdict", "condition3", "pass"] in rows
    assert ["payload", "antipodal_number", "2"] in rows
    code, out, _ = run(capsys, "torus", "--catalog", "torus-6", "--format", "text")
    assert "antipodal_number: 2" in out and "ok: True" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "o.json"
    code, out, _ = run(capsys, "weyl", "--type", "B", "--rank", "2", "--point", "2,1", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["payload"]["antipodal_number"] == 8


def test_bounds_must_be_positive(capsys):
    with pytest.raises(SystemExit):
        main(["torus", "--catalog", "torus-1", "--word-bound", "0"])
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "smanifold", "torus", "--catalog", "torus-7", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "antipodal_number: 1" in proc.stdout


def test_verify_all_csv(capsys):
    code, out, _ = run(capsys, "verify-all", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    verdicts = [r for r in rows if r[0] == "verdict"]
    assert len(verdicts) == 8 and all(r[2] == "pass" for r in verdicts)
    assert code == 0
