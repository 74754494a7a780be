"""
Tests for the tnla command-line tool
"""
import csv
import io
import logging

import numpy as np
import pytest

from tnla import cli, experiments
from tnla.bd import BdMatrix
from tnla.experiments import ExperimentRow
from tnla.fileio import format_matrix, format_vector, parse_text, read_bd, read_matrix
from tnla.generators import hilbert_bd


def _write(tmp_path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _bd_file(tmp_path, name: str, grid) -> str:
    return _write(tmp_path, name, format_matrix(np.asarray(grid, dtype=float), "BD"))


def _vec_file(tmp_path, name: str, v) -> str:
    return _write(tmp_path, name, format_vector(v))


def _comment_value(text: str, key: str) -> float:
    for line in text.splitlines():
        if line.startswith("#") and f"{key}=" in line:
            return float(line.split(f"{key}=")[1].split()[0])
    raise AssertionError(f"{key} not found in output")


class TestGen:

    def test_pascal(self, tmp_path):
        out = str(tmp_path / "b.txt")
        assert cli.main(["gen", "--kind", "pascal", "--n", "3", "--out-bd", out]) == 0
        assert read_bd(out) == BdMatrix(np.ones((3, 3)))

    def test_vandermonde(self, tmp_path, vandermonde_2358_grid):
        out = str(tmp_path / "b.txt")
        assert cli.main(["gen", "--kind", "vandermonde", "--nodes", "2,3,5,8", "--out-bd", out]) == 0
        assert read_bd(out) == BdMatrix(vandermonde_2358_grid)

    def test_hilbert_1(self, tmp_path):
        out = str(tmp_path / "b.txt")
        assert cli.main(["gen", "--kind", "hilbert", "--n", "1", "--out-bd", out]) == 0
        assert read_bd(out) == BdMatrix([[1.0]])

    def test_stdout_and_matrix_file(self, tmp_path, capsys):
        out = str(tmp_path / "a.txt")
        assert cli.main(["gen", "--kind", "cauchy", "--nodes", "0,1", "--ynodes", "1,2", "--out-matrix", out]) == 0
        np.testing.assert_allclose(read_matrix(out), [[1, 0.5], [0.5, 1 / 3]], rtol=1e-15)
        assert capsys.readouterr().out == ""
        assert cli.main(["gen", "--kind", "pascal", "--n", "2"]) == 0
        assert parse_text(capsys.readouterr().out).tag == "BD"

    def test_random_is_reproducible(self, capsys):
        args = ["gen", "--kind", "random-tn", "--n", "4", "--seed", "7", "--hex"]
        cli.main(args)
        first = capsys.readouterr().out
        cli.main(args)
        assert capsys.readouterr().out == first
        assert "--seed 7" in first

    def test_missing_parameter(self, capsys):
        assert cli.main(["gen", "--kind", "hilbert"]) == cli.EXIT_USAGE
        assert "--n" in capsys.readouterr().err

    def test_unknown_kind_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["gen", "--kind", "toeplitz"])
        assert info.value.code == 2


class TestSolve:

    def test_identity_echoes_rhs(self, tmp_path, capsys):
        bd = _bd_file(tmp_path, "eye.bd", np.eye(3))
        rhs = _vec_file(tmp_path, "b.txt", [0.5, -1.25, 3.0])
        assert cli.main(["solve", "--bd", bd, "--rhs", rhs]) == 0
        np.testing.assert_array_equal(parse_text(capsys.readouterr().out).data, [0.5, -1.25, 3.0])

    def test_hilbert_compare_oracle(self, tmp_path, capsys, alternating_rhs):
        bd = _bd_file(tmp_path, "h7.bd", hilbert_bd(7).grid)
        rhs = _vec_file(tmp_path, "f.txt", [float(v) for v in alternating_rhs])
        assert cli.main(["solve", "--bd", bd, "--rhs", rhs, "--compare-oracle"]) == 0
        assert _comment_value(capsys.readouterr().out, "relative_error") <= 5e-15

    def test_bjorck_pereyra(self, tmp_path, capsys):
        rhs = _vec_file(tmp_path, "f.txt", [0.0, 1.0, 4.0])
        assert cli.main(["solve", "--method", "bp", "--nodes", "0,1,2", "--rhs", rhs, "--compare-oracle"]) == 0
        out = capsys.readouterr().out
        np.testing.assert_array_equal(parse_text(out).data, [0.0, 0.0, 1.0])
        assert _comment_value(out, "relative_error") == 0.0

    def test_bp_needs_nodes(self, tmp_path):
        rhs = _vec_file(tmp_path, "f.txt", [1.0])
        assert cli.main(["solve", "--method", "bp", "--rhs", rhs]) == cli.EXIT_USAGE

    def test_matrix_baseline_and_transpose(self, tmp_path, capsys):
        m = _write(tmp_path, "a.txt", "M 2 2\n1 1\n1 2\n")
        rhs = _vec_file(tmp_path, "b.txt", [1.0, -1.0])
        assert cli.main(["solve", "--matrix", m, "--rhs", rhs, "--method", "baseline"]) == 0
        np.testing.assert_allclose(parse_text(capsys.readouterr().out).data, [3.0, -2.0], rtol=1e-14)
        bd = _bd_file(tmp_path, "g.bd", [[1.0, 0.0], [2.0, 1.0]])
        assert cli.main(["solve", "--bd", bd, "--rhs", rhs, "--transpose"]) == 0
        # A = [[1, 0], [2, 1]], A^T x = (1, -1)
        np.testing.assert_array_equal(parse_text(capsys.readouterr().out).data, [3.0, -1.0])

    def test_dimension_mismatch(self, tmp_path, capsys):
        bd = _bd_file(tmp_path, "eye.bd", np.eye(3))
        rhs = _vec_file(tmp_path, "b.txt", [1.0, 2.0])
        assert cli.main(["solve", "--bd", bd, "--rhs", rhs]) == cli.EXIT_DOMAIN
        assert "DimensionMismatchError" in capsys.readouterr().err


class TestSpectraAndInverse:

    def test_eig_hilbert_10_compare_oracle(self, tmp_path, capsys):
        bd = _bd_file(tmp_path, "h10.bd", hilbert_bd(10).grid)
        assert cli.main(["eig", "--bd", bd, "--compare-oracle"]) == 0
        table = parse_text(capsys.readouterr().out).data
        assert table.shape == (10, 2)
        assert table[-1, 1] <= 1e-14

    def test_svd_pascal(self, tmp_path, capsys):
        bd = _bd_file(tmp_path, "p2.bd", np.ones((2, 2)))
        assert cli.main(["svd", "--bd", bd]) == 0
        out = capsys.readouterr().out
        assert "kind=singular method=bd-reduction" in out
        np.testing.assert_allclose(parse_text(out).data, [(3 + 5 ** 0.5) / 2, (3 - 5 ** 0.5) / 2], rtol=1e-14)

    def test_eig_baseline(self, tmp_path, capsys):
        m = _write(tmp_path, "a.txt", "M 2 2\n1 1\n1 2\n")
        assert cli.main(["eig", "--matrix", m, "--method", "baseline"]) == 0
        assert "method=dense" in capsys.readouterr().out

    def test_inv(self, tmp_path, capsys):
        bd = _bd_file(tmp_path, "p2.bd", np.ones((2, 2)))
        assert cli.main(["inv", "--bd", bd, "--compare-oracle"]) == 0
        out = capsys.readouterr().out
        np.testing.assert_array_equal(parse_text(out).data, [[2.0, -1.0], [-1.0, 1.0]])
        assert _comment_value(out, "relative_error") == 0.0

    def test_cond_durer(self, tmp_path, capsys, durer_grid):
        bd = _bd_file(tmp_path, "durer.bd", durer_grid)
        assert cli.main(["cond", "--bd", bd]) == 0
        kappa = float(capsys.readouterr().out.split()[0])
        assert experiments.DURER_KAPPA2 / 1.05 <= kappa <= experiments.DURER_KAPPA2 * 1.05

    def test_bp_method_rejected_for_spectra(self, tmp_path):
        bd = _bd_file(tmp_path, "p2.bd", np.ones((2, 2)))
        with pytest.raises(SystemExit):
            cli.main(["svd", "--bd", bd, "--method", "bp"])


class TestBdAndExpand:

    def test_neville(self, tmp_path, capsys, durer_matrix, durer_grid):
        m = _write(tmp_path, "a.txt", format_matrix(np.asarray(durer_matrix, dtype=float)))
        assert cli.main(["bd", "--matrix", m]) == 0
        np.testing.assert_allclose(parse_text(capsys.readouterr().out).data, durer_grid, rtol=1e-12)

    def test_expand(self, tmp_path, capsys, durer_matrix, durer_grid):
        bd = _bd_file(tmp_path, "durer.bd", durer_grid)
        out = str(tmp_path / "a.txt")
        assert cli.main(["expand", "--bd", bd, "--out", out, "--hex"]) == 0
        np.testing.assert_array_equal(read_matrix(out), durer_matrix)

    def test_not_totally_nonnegative(self, tmp_path, capsys):
        m = _write(tmp_path, "a.txt", "M 2 2\n0 1\n1 0\n")
        assert cli.main(["bd", "--matrix", m]) == cli.EXIT_DOMAIN
        assert "NotTotallyNonnegativeError" in capsys.readouterr().err


class TestErrors:

    def test_parse_error(self, tmp_path, capsys):
        bd = _write(tmp_path, "bad.bd", "BD 2 2\n1 0\n0 x\n")
        assert cli.main(["expand", "--bd", bd]) == cli.EXIT_PARSE
        assert "line 3, column 3" in capsys.readouterr().err

    def test_invalid_grid(self, tmp_path):
        bd = _write(tmp_path, "bad.bd", "BD 2 2\n1 -1\n0 1\n")
        assert cli.main(["expand", "--bd", bd]) == cli.EXIT_DOMAIN

    def test_missing_file(self, tmp_path):
        assert cli.main(["expand", "--bd", str(tmp_path / "nope.bd")]) == cli.EXIT_USAGE

    def test_missing_operator(self, tmp_path):
        rhs = _vec_file(tmp_path, "b.txt", [1.0])
        assert cli.main(["solve", "--rhs", rhs]) == cli.EXIT_USAGE

    def test_non_symmetric_grid(self, tmp_path, capsys):
        bd = _bd_file(tmp_path, "g.bd", [[1.0, 2.0], [3.0, 1.0]])
        assert cli.main(["eig", "--bd", bd]) == cli.EXIT_DOMAIN
        assert "NotSymmetricError" in capsys.readouterr().err

    def test_unsorted_nodes(self, capsys):
        assert cli.main(["gen", "--kind", "vandermonde", "--nodes", "3,2"]) == cli.EXIT_DOMAIN
        assert "NodesNotSortedError" in capsys.readouterr().err

    def test_library_failure_is_logged(self, tmp_path, caplog):
        bd = _write(tmp_path, "bad.bd", "BD 2 2\n1 -1\n0 1\n")
        with caplog.at_level(logging.DEBUG, logger="tnla.cli"):
            assert cli.main(["expand", "--bd", bd]) == cli.EXIT_DOMAIN
        assert "expand failed" in caplog.text


class TestExperiment:

    def _rows(self, text: str):
        return list(csv.DictReader(io.StringIO(text)))

    def test_vand7(self, capsys):
        assert cli.main(["experiment", "vand7"]) == 0
        rows = {r["case_id"]: r for r in self._rows(capsys.readouterr().out)}
        assert set(rows) == {"vand7", "vand7-bp"}
        for row in rows.values():
            assert float(row["structured_err"]) <= 5e-15
            assert float(row["baseline_err"]) >= 1e-15
            assert row["reference_source"] == "exact-rational"

    def test_pascal10_svd(self, capsys):
        assert cli.main(["experiment", "pascal10-svd"]) == 0
        (row,) = self._rows(capsys.readouterr().out)
        assert float(row["structured_err"]) <= 1e-14
        assert row["reference_source"].startswith("mpmath-")

    def test_csv_to_file(self, tmp_path):
        out = tmp_path / "report.csv"
        assert cli.main(["experiment", "vand-bd", "--out", str(out)]) == 0
        header = out.read_text().splitlines()[0]
        assert header.split(",") == list(experiments.CSV_COLUMNS)

    def test_gate_failure(self, monkeypatch, capsys):
        def failing():
            return [ExperimentRow("vand-bd", "vandermonde", 4, 1.0, 1.0, None, "exact-rational",
                                  failures=["structured_err 1.000e+00 > 0.0e+00"])]
        monkeypatch.setitem(experiments.CASES, "vand-bd", failing)
        assert cli.main(["experiment", "vand-bd"]) == cli.EXIT_GATE
        captured = capsys.readouterr()
        assert "vand-bd" in captured.out
        assert "FAIL vand-bd" in captured.err
