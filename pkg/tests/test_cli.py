from __future__ import annotations

import json
import subprocess
import sys

import pytest

from sliplab.cli import main
from sliplab.constructions import matrix_bimodule, scalar_bimodule, scalar_field, u_dual_numbers
from sliplab.io import serialize_algebra, serialize_module


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("SLIPLAB_CAP", raising=False)
    assert main(["construct", "field", "2", "-o", "f2.alg"]) == 0
    assert main(["construct", "u", "2", "-o", "u2.alg"]) == 0
    assert main(["construct", "matn", "f2.alg", "2", "-o", "m2.alg"]) == 0
    (tmp_path / "uu.mod").write_text(serialize_module(scalar_bimodule(u_dual_numbers(2)), "f2.alg", "u2.alg"))
    assert main(["construct", "tri", "uu.mod", "-o", "tri.alg"]) == 0
    return tmp_path


def test_construct_round_trip(files, capsys):
    code, out, _ = run(capsys, "construct", "u", "2")
    assert code == 0 and out == serialize_algebra(u_dual_numbers(2))
    code, out, _ = run(capsys, "construct", "block", "u2.alg", "1,2")
    assert code == 0 and "name B3^(1,2)(U(2))" in out
    code, out, _ = run(capsys, "construct", "product", "f2.alg", "u2.alg", "--json")
    assert json.loads(out)["dim"] == 3


def test_check_slip_exit_codes(files, capsys):
    code, out, _ = run(capsys, "check-slip", "m2.alg", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["lip_dim"] == 4 and report["is_slip"] is True
    assert list(report) == ["command", "algebra", "p", "dim", "multiplier_dim", "lip_dim", "is_slip", "witness",
                            "points_processed", "early_stop"]
    code, out, _ = run(capsys, "check-slip", "u2.alg", "--json")
    assert code == 1 and json.loads(out)["witness"] == [[1, 0], [0, 0]]


def test_check_zpd_on_triangular(files, capsys):
    code, out, _ = run(capsys, "check-zpd", "tri.alg", "--json")
    assert code == 1
    report = json.loads(out)
    assert (report["span_dim"], report["kernel_dim"]) == (19, 20) and report["witness"] is not None
    assert run(capsys, "check-slip", "tri.alg")[0] == 0


def test_lip_basis_and_witness_pipeline(files, capsys):
    code, out, _ = run(capsys, "lip-basis", "u2.alg", "--json")
    assert code == 0 and len(json.loads(out)["basis"]) == 3
    code, _, _ = run(capsys, "witness", "u2.alg", "--map-out", "w.map")
    assert code == 1 and (files / "w.map").read_text().startswith("rows 2\ncols 2\n")


def test_idempotents_and_decompose(files, capsys):
    code, out, _ = run(capsys, "idempotents", "tri.alg", "--semicentral", "--json")
    assert code == 0
    semis = json.loads(out)["idempotents"]
    assert [1, 0, 0, 0, 0] in semis
    (files / "id.map").write_text("rows 5\ncols 5\n" + "".join(
        " ".join("1" if i == j else "0" for j in range(5)) + "\n" for i in range(5)))
    code, out, _ = run(capsys, "decompose", "tri.alg", "id.map", "--json")
    assert code == 0 and json.loads(out)["all_passed"] is True
    code, _, err = run(capsys, "decompose", "tri.alg", "id.map", "--idem", "99")
    assert code == 2 and "out of range" in err


def test_verify_triangulating(files, capsys):
    (files / "good.txt").write_text("1 0 0 0 0\n0 0 0 0 1\n")
    (files / "bad.txt").write_text("0 0 0 0 1\n1 0 0 0 0\n")
    assert run(capsys, "verify-triangulating", "tri.alg", "good.txt")[0] == 0
    code, out, _ = run(capsys, "verify-triangulating", "tri.alg", "bad.txt", "--json")
    assert code == 1 and json.loads(out)["clause"] == "ii"


def test_cap_handling(files, capsys, monkeypatch):
    assert main(["construct", "block", "u2.alg", "2", "1", "-o", "b21.alg"]) == 0
    capsys.readouterr()
    assert run(capsys, "check-slip", "b21.alg", "--cap", "100")[0] == 3
    monkeypatch.setenv("SLIPLAB_CAP", "100")
    assert run(capsys, "check-slip", "b21.alg")[0] == 3
    monkeypatch.setenv("SLIPLAB_CAP", "nonsense")
    assert run(capsys, "check-slip", "m2.alg")[0] == 2
    monkeypatch.setenv("SLIPLAB_CAP", "100")
    assert run(capsys, "check-slip", "m2.alg", "--cap", "1000")[0] == 0


def test_usage_and_validation_errors(files, capsys):
    (files / "f4.alg").write_text("field 4\ndim 1\nunit 1\nmul 0 0 : 1\n")
    (files / "short.alg").write_text("field 2\ndim 1\nunit 1\n")
    for argv in (["check-slip", "f4.alg"], ["check-slip", "short.alg"], ["check-slip", "missing.alg"],
                 ["construct", "matn", "f2.alg", "zero"], ["frobnicate"], ["check-slip"]):
        code, _, err = run(capsys, *argv)
        assert code == 2, argv
        assert "Traceback" not in err


def test_output_file_and_determinism(files, capsys):
    for _ in range(2):
        assert main(["check-slip", "tri.alg", "-o", "r.txt"]) == 0
        first = (files / "r.txt").read_bytes()
        assert main(["check-slip", "tri.alg", "--no-early-stop", "-o", "r2.txt"]) == 0
    assert main(["check-slip", "tri.alg", "-o", "r.txt"]) == 0
    assert (files / "r.txt").read_bytes() == first
    code, out, _ = run(capsys, "check-slip", "tri.alg", "--json", "--timing")
    assert "wall_time_s" in json.loads(out)


def test_console_script_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "sliplab.cli", "check-slip", "u2.alg"], capture_output=True, text=True)
    assert proc.returncode == 1 and "witness" in proc.stdout


def test_row_module_triangular_via_cli(files, capsys):
    f2 = scalar_field(2)
    row = matrix_bimodule(f2, 1, 2)
    (files / "m2f.alg").write_text(serialize_algebra(row.right))
    (files / "f.alg").write_text(serialize_algebra(row.left))
    (files / "row.mod").write_text(serialize_module(row, "m2f.alg", "f.alg"))
    assert main(["construct", "tri", "row.mod", "-o", "rowtri.alg"]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "check-slip", "rowtri.alg", "--json")
    assert code == 0 and json.loads(out)["dim"] == 7
