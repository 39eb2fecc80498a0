import csv
import json
import subprocess
import sys

import pytest

from ghopt.cli import OUTPUT_ENV, main

POLY_ARGS = ["fit", "--model", "poly", "--c-lo", "1.70", "--c-hi", "12.00", "--beta0", "6,-8,9"]
LOGI_ARGS = ["fit", "--model", "logistic", "--c-lo", "1.30", "--c-hi", "3.40", "--beta0", "7,-4",
             "--w", "0.7"]


def rows(path):
    return list(csv.DictReader(path.read_text().splitlines()))


class TestSolve:
    def test_stationary_exits_zero(self, tmp_path):
        rc = main(["solve", "--problem", "example-5.2", "--w", "0.3,0.6",
                   "--x0", "0,6", "--x0", "5,2", "--out", str(tmp_path)])
        assert rc == 0
        summary = rows(tmp_path / "solve_example-5.2.csv")
        assert len(summary) == 4 and {r["status"] for r in summary} == {"Stationary"}
        assert len(list(tmp_path.glob("trace_example-5.2_*.csv"))) == 4

    def test_max_iter_exits_two(self, tmp_path):
        rc = main(["solve", "--problem", "example-5.2", "--x0", "0,6", "--max-iter", "1",
                   "--out", str(tmp_path)])
        assert rc == 2

    def test_json_output(self, tmp_path):
        rc = main(["solve", "--problem", "example-5.1", "--x0", "-2", "--format", "json",
                   "--out", str(tmp_path)])
        assert rc == 0
        doc = json.loads((tmp_path / "solve_example-5.1.json").read_text())
        assert doc[0]["status"] == "Stationary"

    def test_output_dir_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv(OUTPUT_ENV, str(tmp_path / "env"))
        assert main(["solve", "--problem", "paraboloid", "--x0", "1,1"]) == 0
        assert (tmp_path / "env" / "solve_paraboloid.csv").exists()

    @pytest.mark.parametrize(
        "argv",
        [
            ["solve", "--problem", "nope", "--x0", "1"],
            ["solve", "--problem", "example-5.1", "--x0", "1,2"],
            ["solve", "--problem", "example-5.1", "--x0", "9"],
            ["solve", "--problem", "example-5.1", "--x0", "1", "--w", "1.5"],
            ["solve", "--problem", "example-5.1", "--x0", "1", "--max-iter", "0"],
            ["solve", "--problem", "example-5.1", "--x0", "abc"],
            ["solve", "--problem", "example-5.1"],
            ["sweep", "--problem", "paraboloid"],
            ["bogus"],
            [],
        ],
    )
    def test_config_errors_exit_one(self, tmp_path, argv, capsys):
        assert main(argv + ["--out", str(tmp_path)] if argv else argv) == 1
        assert "usage:" in capsys.readouterr().err


class TestSweep:
    def test_standard_grid(self, tmp_path):
        rc = main(["sweep", "--problem", "example-5.2", "--jobs", "2", "--out", str(tmp_path)])
        assert rc == 0
        summary = rows(tmp_path / "solve_example-5.2.csv")
        assert len(summary) == 18
        for r in summary:
            assert abs(float(r["x_1"]) - 2) <= 1e-3 and abs(float(r["x_2"]) - 3) <= 1e-3


class TestFit:
    def test_polynomial_report(self, tmp_path):
        assert main(POLY_ARGS + ["--w", "0.5", "--out", str(tmp_path)]) == 0
        assert len(rows(tmp_path / "fit_poly_w0.5.csv")) == 21
        summary = json.loads((tmp_path / "fit_poly_w0.5.summary.json").read_text())
        assert summary["status"] == "Stationary" and len(summary["beta_hat"]) == 3
        assert (tmp_path / "fit_poly_w0.5_trace.csv").exists()

    def test_logistic_report(self, tmp_path):
        assert main(LOGI_ARGS + ["--format", "json", "--out", str(tmp_path)]) == 0
        doc = json.loads((tmp_path / "fit_logistic_w0.7.json").read_text())
        assert len(doc["bands"]) == 15 and doc["status"] == "Stationary"

    def test_wrong_beta_length(self, tmp_path):
        argv = ["fit", "--model", "poly", "--c-lo", "1", "--c-hi", "2", "--beta0", "1,2"]
        assert main(argv + ["--out", str(tmp_path)]) == 1

    def test_empty_data_file(self, tmp_path, capsys):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        assert main(POLY_ARGS + ["--data", str(empty), "--out", str(tmp_path)]) == 1
        assert "line 1" in capsys.readouterr().err

    def test_reversed_interval_in_data(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("x_lo,x_hi,y_lo,y_hi\n0,1,2,3\n1,0,2,3\n")
        assert main(POLY_ARGS + ["--data", str(bad), "--out", str(tmp_path)]) == 1
        assert "line 3" in capsys.readouterr().err

    def test_unwritable_output(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        assert main(POLY_ARGS + ["--out", str(blocker / "sub")]) == 1


def test_module_entry_point_help():
    done = subprocess.run([sys.executable, "-m", "ghopt", "--help"], capture_output=True, text=True)
    assert done.returncode == 0
    for word in ("solve", "sweep", "fit"):
        assert word in done.stdout
