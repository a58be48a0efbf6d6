from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from cehom.algebra import surface_cohomology
from cehom.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, main
from cehom.output import table_from_records, to_json_lines
from cehom.ce import Surface, betti_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_betti_csv(capsys):
    code, out, _ = run(capsys, "betti", "--surface", "torus", "--max-weight", "2", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["surface", "field", "weight", "degree", "dim"]
    dims = {}
    for _, _, w, d, n in rows[1:]:
        dims.setdefault(int(w), []).append(int(n))
    assert dims == {1: [1, 2, 1], 2: [1, 2, 1]}


def test_betti_json(capsys):
    code, out, _ = run(capsys, "betti", "--surface", "torus", "--max-weight", "1", "--format", "json")
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["k"] == 1 and rec["dims"] == [1, 2, 1]
    assert rec["dims_by_total_degree"] == [1, 2, 1]
    assert rec["field"] == "Q" and rec["surface"] == "torus"
    assert set(rec["conventions"]) == {"koszul_sign", "bidegree"}
    assert rec["conventions"]["bidegree"].startswith("s=len-1")
    assert {"s", "t", "dim"} <= set(rec["bidegrees"][0])


def test_json_round_trip():
    tab = betti_table(Surface.punctured(1), 4)
    text = to_json_lines(tab, "punctured(g=1)")
    back = table_from_records(json.loads(line) for line in text.splitlines())
    assert back.same_dims(tab)
    assert back.weights() == tab.weights()


def test_mod_p_field(capsys):
    code, out, _ = run(capsys, "betti", "--weight", "6", "--field", "F_3", "--format", "json")
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["field"] == "F_3" and rec["dims"] == [1, 2, 3, 5, 7, 9, 9, 4]


def test_custom_algebra(capsys, tmp_path):
    path = tmp_path / "torus.json"
    path.write_text(json.dumps(surface_cohomology(1).to_json()))
    code, out, _ = run(capsys, "betti", "--surface", "custom", "--algebra", str(path), "--weight", "3",
                       "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["dims"] == [1, 2, 3, 4, 2]


def test_custom_bad_schema(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"basis": 3}')
    code, _, err = run(capsys, "betti", "--surface", "custom", "--algebra", str(path))
    assert code == EXIT_INVALID
    assert "basis" in err


def test_compare_torus_p5(capsys):
    code, out, _ = run(capsys, "compare", "--surface", "torus", "--prime", "5")
    assert code == EXIT_OK
    assert out.count("equal") >= 5 and "MISMATCH" not in out


def test_compare_punctured_p3(capsys):
    code, _, _ = run(capsys, "compare", "--surface", "punctured", "--genus", "1", "--prime", "3")
    assert code == EXIT_OK


def test_compare_json(capsys):
    code, out, _ = run(capsys, "compare", "--punctured", "--genus", "2", "--prime", "5", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["all_equal"] and len(data["results"]) == 5


def test_compare_refuses_weight_above_p(capsys):
    code, _, err = run(capsys, "compare", "--surface", "torus", "--prime", "5", "--weight", "6")
    assert code == EXIT_INVALID
    assert "weight > p unsupported" in err


@pytest.mark.parametrize("argv", [
    ["betti", "--prime", "2"],
    ["betti", "--prime", "9"],
    ["betti", "--max-weight", "8"],
    ["betti", "--weight", "0"],
    ["compare", "--surface", "torus"],
    ["betti", "--surface", "closed", "--genus", "-1"],
    ["nonsense"],
])
def test_invalid_input_exit_code(capsys, argv):
    assert main(argv) == EXIT_INVALID


def test_selfcheck_clean(capsys):
    code, out, _ = run(capsys, "selfcheck", "--max-weight", "5", "--primes", "3,5")
    assert code == EXIT_OK
    assert "clean" in out


def test_selfcheck_detects_fault(capsys):
    code, out, _ = run(capsys, "selfcheck", "--max-weight", "4", "--primes", "3", "--inject-fault", "sign-flip")
    assert code == EXIT_MISMATCH
    assert "d∘d != 0" in out


def test_report_writes_figures(capsys, tmp_path):
    code, out, err = run(capsys, "report", "--out", str(tmp_path), "--max-weight", "4", "--primes", "3")
    assert code == EXIT_OK
    assert out.startswith("surface,field,weight,degree,dim")
    for name in ("betti.csv", "betti.png", "compare.csv", "compare_p3_k3.png"):
        assert (tmp_path / name).stat().st_size > 0
    assert (tmp_path / "betti.png").read_bytes()[:4] == b"\x89PNG"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cehom", "betti", "--max-weight", "1", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "torus,Q,1,0,1"
