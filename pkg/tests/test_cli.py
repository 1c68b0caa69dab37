from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from gfourier import cli
from gfourier.kernels import make_spec, series_kernel
from gfourier.opalg import Poly

DATA = Path(__file__).parent / "data"


def rows(text):
    return list(csv.reader(io.StringIO(text)))


@pytest.mark.parametrize("argv, golden", [
    (["tables", "--family", "E", "--nmax", "5", "--xmax", "15"], "table1.csv"),
    (["tables", "--family", "D", "--nmax", "5", "--xmax", "15"], "table2.csv"),
    (["tables", "--family", "E", "--xmax", "15", "--selectors"], "table3.csv"),
    (["tables", "--family", "D", "--xmax", "15", "--selectors"], "table4.csv")])
def test_tables_are_byte_identical_to_golden_files(argv, golden):
    assert cli.render(argv).encode() == (DATA / golden).read_bytes()


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    assert cli.run(["tables", "--family", "E", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_bytes() == (DATA / "table1.csv").read_bytes()


def test_spectrum_rows():
    out = rows(cli.render(["spectrum", "--m", "2", "--jmax", "1", "--kmax", "3"]))
    assert out == [["j", "0", "1", "2", "3"], ["0", "1", "i", "-1", "-i"], ["1", "-1", "-i", "1", "i"]]
    out = rows(cli.render(["spectrum", "--m", "2", "--F", "seq:0,1,0", "--jmax", "0", "--kmax", "2"]))
    # F = E_1 = x^2 mod 4 gives mu_{0,k} = i^{k^2 + k}
    assert out[1] == ["0", "1", "-1", "-1"]


def test_kernel_values_match_library():
    text = cli.render(["kernel", "--m", "2", "--F", "1,2,3,0", "--x", "1,0;0.5,2", "--y", "0.3,-1"])
    table = rows(text)
    assert table[0] == ["x1", "x2", "y1", "y2", "re", "im"]
    spec = make_spec(2, "harmonic", (1, 2, 3, 0))
    for row in table[1:]:
        x, y = np.array(row[0:2], float), np.array(row[2:4], float)
        val = complex(float(row[4]), float(row[5]))
        assert val == pytest.approx(series_kernel(spec, x, y), abs=1e-15)


def test_kernel_closed_path_and_grid():
    series = rows(cli.render(["kernel", "--m", "2", "--F", "0,1,2,0", "--grid", "3"]))
    closed = rows(cli.render(["kernel", "--m", "2", "--F", "0,1,2,0", "--grid", "3",
                              "--path", "closed"]))
    assert len(series) == 1 + 9 * 9
    diff = np.abs(np.array([r[4:] for r in series[1:]], float)
                  - np.array([r[4:] for r in closed[1:]], float))
    assert diff.max() < 1e-12


def test_clifford_kernel_columns():
    table = rows(cli.render(["kernel", "--setting", "clifford", "--m", "2", "--grid", "2"]))
    assert table[0][4:] == ["re_e0", "im_e0", "re_e1", "im_e1", "re_e2", "im_e2",
                            "re_e12", "im_e12"]


def test_transform_exact_and_quadrature_agree():
    base = ["transform", "--m", "2", "--F", "1,1,2,0", "--input", "basis:1,2", "--y", "0.4,1;-1,0.2"]
    exact = rows(cli.render(base))
    quad = rows(cli.render(base + ["--method", "quad"]))
    assert exact[0] == ["y1", "y2", "re", "im"]
    a = np.array([r[2:] for r in exact[1:]], float)
    b = np.array([r[2:] for r in quad[1:]], float)
    assert np.max(np.abs(a - b)) < 1e-6


def test_transform_json_input(tmp_path):
    poly = Poly.monomial(2, [1, 0], 1)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(poly.to_dict()))
    out = rows(cli.render(["transform", "--m", "2", "--input", f"json:{path}", "--y", "1,0"]))
    # x1 e^{-|x|^2/2} -> i y1 e^{-|y|^2/2}
    assert float(out[1][2]) == pytest.approx(0.0, abs=1e-15)
    assert float(out[1][3]) == pytest.approx(np.exp(-0.5))
    inline = rows(cli.render(["transform", "--m", "2", "--input",
                              "json:" + json.dumps(poly.to_dict()), "--y", "1,0"]))
    assert inline == out


@pytest.mark.parametrize("argv", [
    ["tables", "--family", "X"],
    ["spectrum", "--m", "3", "--F", "1,2"],
    ["spectrum", "--m", "2", "--F", "seq:0,1", "--kmax", "5"],
    ["kernel", "--m", "3", "--F", "0,1,0,0", "--path", "closed", "--grid", "2"],
    ["kernel", "--m", "2", "--x", "1,2,3"],
    ["transform", "--m", "2", "--input", "basis:1"],
    ["transform", "--m", "4", "--input", "basis:0,0", "--method", "quad"],
    ["verify", "--module", "nothing"],
    ["nope"]])
def test_bad_flags_exit_2(argv, capsys):
    assert cli.run(argv) == 2
    assert capsys.readouterr().err


def test_output_is_deterministic():
    argv = ["kernel", "--setting", "clifford", "--m", "3", "--F", "1,2,3,0", "--grid", "2"]
    assert cli.render(argv) == cli.render(argv)


def test_negative_zero_is_folded():
    assert cli._float(-0.0) == "0"


def test_verify_exact_suite_via_subprocess(tmp_path):
    target = tmp_path / "v.csv"
    proc = subprocess.run([sys.executable, "-m", "gfourier", "verify", "--suite", "exact",
                           "--module", "exactnum", "--out", str(target)],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    text = target.read_text()
    assert text.splitlines()[-1].endswith("failed 0")
    assert all(r[3] == "PASS" for r in rows(text)[1:-1])


def test_verify_failure_exits_1(monkeypatch, capsys):
    from gfourier import verify

    failing = verify.Check("cli", "always_fails", verify.EXACT, lambda: (False, "forced"))
    monkeypatch.setitem(verify.REGISTRY, "cli", [failing])
    assert cli.run(["verify", "--module", "cli"]) == 1
    assert "FAIL" in capsys.readouterr().out
