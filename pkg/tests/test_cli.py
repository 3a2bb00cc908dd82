import csv
import json

import numpy as np
import pytest

from app import cli_main
from config import EXIT_IO, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE


def _read_trace(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def test_solve_generated_matrix(tmp_path):
    out, trace, structure = tmp_path / "r.json", tmp_path / "t.csv", tmp_path / "s.csv"
    code = cli_main([
        "solve", "--input", "gen:a1", "--n", "20", "--block-size", "5", "--tol", "1e-10",
        "--seed", "3", "--out", str(out), "--trace", str(trace), "--structure", str(structure),
    ])
    assert code == EXIT_OK

    data = json.loads(out.read_text())
    assert data["status"] == "converged"
    assert len(data["eigenvalues"]) == 20
    assert data["config"]["block_size"] == 5

    rows = _read_trace(trace)
    assert list(rows[0].keys()) == ["cycle", "off_A", "off_B", "normC", "frob_A", "cum_delta"]
    off_b = [float(row["off_B"]) for row in rows]
    assert off_b[-1] <= off_b[0]
    assert b"\r\n" not in trace.read_bytes()
    assert structure.read_text().startswith("component,size,indices,real_part")


def test_solve_diagonal_file_has_single_trace_row(tmp_path):
    matrix = tmp_path / "d.mtx"
    matrix.write_text("%%MatrixMarket matrix coordinate real general\n3 3 3\n1 1 1\n2 2 2\n3 3 3\n")
    trace = tmp_path / "t.csv"
    assert cli_main(["solve", "--input", str(matrix), "--block-size", "1", "--trace", str(trace)]) == EXIT_OK
    rows = _read_trace(trace)
    assert len(rows) == 1
    assert float(rows[0]["off_A"]) == 0.0


def test_block_size_larger_than_n_is_usage_error(tmp_path):
    assert cli_main(["solve", "--input", "gen:a1", "--n", "4", "--block-size", "9"]) == EXIT_USAGE


def test_missing_block_size_is_usage_error():
    assert cli_main(["solve", "--input", "gen:a1", "--n", "4"]) == EXIT_USAGE


def test_unknown_option_is_usage_error():
    assert cli_main(["solve", "--bogus"]) == EXIT_USAGE


def test_missing_input_file_is_io_error(tmp_path):
    assert cli_main(["solve", "--input", str(tmp_path / "x.mtx"), "--block-size", "2"]) == EXIT_IO


def test_orderings_prints_layout(capsys):
    assert cli_main(["orderings", "--m", "4", "--kind", "row"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Ordenamiento row (m = 4" in out
    assert " * 0 1 2\n   * 3 4\n     * 5\n       *" in out


def test_gen_writes_matrix_and_spectrum(tmp_path):
    out = tmp_path / "a2.mtx"
    code = cli_main(["gen", "--kind", "a2", "--n", "12", "--mult", "4,2,1,1,0", "--seed", "1", "--out", str(out)])
    assert code == EXIT_USAGE

    code = cli_main(["gen", "--kind", "a2", "--n", "12", "--mult", "4,1,1,1,1", "--seed", "1", "--out", str(out)])
    assert code == EXIT_OK
    sidecar = json.loads((tmp_path / "a2.spectrum.json").read_text())
    assert len(sidecar["eigenvalues"]) == 12


def test_solve_then_report_with_spectrum(tmp_path, capsys):
    matrix = tmp_path / "a0.mtx"
    assert cli_main(["gen", "--kind", "a0", "--n", "10", "--seed", "2", "--out", str(matrix)]) == EXIT_OK

    result = tmp_path / "r.json"
    trace = tmp_path / "t.csv"
    code = cli_main(["solve", "--input", str(matrix), "--block-size", "5", "--out", str(result), "--trace", str(trace)])
    assert code == EXIT_OK
    data = json.loads(result.read_text())
    assert data["accuracy"]["max_rel_error"] <= 1e-7

    code = cli_main(["report", "--result", str(result), "--spectrum", str(tmp_path / "a0.spectrum.json"),
                     "--trace", str(trace)])
    assert code == EXIT_OK
    assert "off(B) no creciente" in capsys.readouterr().out


def test_report_missing_file_is_io_error(tmp_path):
    assert cli_main(["report", "--result", str(tmp_path / "none.json")]) == EXIT_IO


def test_bench_runs(capsys):
    assert cli_main(["bench", "--n", "8", "--block-sizes", "2,4", "--cycles", "1", "--seed", "1"]) == EXIT_OK
    assert "s/ciclo" in capsys.readouterr().out


def test_serial_ordering_and_file_ordering(tmp_path):
    ordering = tmp_path / "o.txt"
    ordering.write_text("1 2\n1 3\n2 3\n")
    assert cli_main(["solve", "--input", "gen:a1", "--n", "6", "--block-size", "2", "--seed", "1",
                     "--ordering", f"file:{ordering}"]) == EXIT_OK
    assert cli_main(["solve", "--input", "gen:a1", "--n", "6", "--block-size", "2", "--seed", "1",
                     "--ordering", "serial-perm:4"]) == EXIT_OK
    assert cli_main(["solve", "--input", "gen:a1", "--n", "6", "--block-size", "2",
                     "--ordering", "zigzag"]) == EXIT_USAGE


def test_solve_file_with_huge_entries(tmp_path):
    matrix = tmp_path / "big.mtx"
    rng = np.random.default_rng(5)
    entries = rng.standard_normal((6, 6)) * 1e200
    lines = ["%%MatrixMarket matrix array real general", "6 6"]
    lines += [repr(float(v)) for v in entries.T.ravel()]
    matrix.write_text("\n".join(lines) + "\n")

    out = tmp_path / "r.json"
    assert cli_main(["solve", "--input", str(matrix), "--block-size", "3", "--out", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert len(data["eigenvalues"]) == 6


def test_internal_value_error_is_not_a_usage_error(monkeypatch):
    def broken(config, verbose=False):
        raise np.linalg.LinAlgError("Singular matrix")

    monkeypatch.setattr("app.solve_and_save", broken)
    assert cli_main(["solve", "--input", "gen:a1", "--n", "4", "--block-size", "2"]) == EXIT_NUMERICAL


def test_bad_seed_in_environment_is_usage_error(monkeypatch):
    monkeypatch.setenv("EBERLEIN_SEED", "abc")
    assert cli_main(["solve", "--input", "gen:a1", "--n", "4", "--block-size", "2"]) == EXIT_USAGE
