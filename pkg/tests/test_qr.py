"""
Tests for QR from BD and least squares
"""
import math

import numpy as np
import pytest

from tnla import oracle
from tnla.bd import BdMatrix, bd_leading_block, tn_expand, tn_solve
from tnla.exceptions import DimensionMismatchError
from tnla.generators import pascal_bd, random_tn_bd, vandermonde_bd
from tnla.qr import tn_lsq_solve, tn_qr

from tests.helpers import rel_err

R2 = math.sqrt(2.0)


def qr_fixtures():
    return [
        ("pascal4x3", bd_leading_block(pascal_bd(4), 4, 3)),
        ("pascal5", pascal_bd(5)),
        ("vandermonde6x3", bd_leading_block(vandermonde_bd([1, 2, 3, 4, 5, 6]), 6, 3)),
        ("random6x4", bd_leading_block(random_tn_bd(6, seed=4, lo=0.5, hi=1.0), 6, 4)),
        ("random5", random_tn_bd(5, seed=12, lo=0.5, hi=1.0)),
    ]


class TestTnQr:

    def test_identity(self):
        qr = tn_qr(BdMatrix.identity(3))
        np.testing.assert_array_equal(qr.Q, np.eye(3))
        assert qr.R == BdMatrix.identity(3)

    def test_pascal_2(self):
        qr = tn_qr(pascal_bd(2))
        np.testing.assert_allclose(qr.Q, np.array([[1, -1], [1, 1]]) / R2, rtol=1e-15)
        np.testing.assert_allclose(tn_expand(qr.R), [[R2, 3 / R2], [0, 1 / R2]], rtol=1e-15, atol=0)

    @pytest.mark.parametrize("name,B", qr_fixtures())
    def test_orthogonality(self, name, B):
        qr = tn_qr(B)
        m, n = B.shape
        assert qr.Q.shape == (m, n)
        assert np.max(np.abs(qr.Q.T @ qr.Q - np.eye(n))) <= 1e-13 * m, name

    @pytest.mark.parametrize("name,B", qr_fixtures())
    def test_reconstruction(self, name, B):
        qr = tn_qr(B)
        A = tn_expand(B)
        assert rel_err(qr.Q @ tn_expand(qr.R), A).max() <= 1e-12, name

    @pytest.mark.parametrize("name,B", qr_fixtures())
    def test_r_is_upper_triangular_tn(self, name, B):
        R = tn_qr(B).R
        assert R.shape == (B.cols, B.cols)
        assert np.all(np.tril(R.grid, -1) == 0.0), name
        assert np.all(R.grid >= 0.0), name

    def test_graded_reconstruction_is_normwise(self):
        B = bd_leading_block(random_tn_bd(10, seed=3), 10, 6)
        qr = tn_qr(B)
        A = tn_expand(B)
        assert np.linalg.norm(qr.Q @ tn_expand(qr.R) - A, 2) <= 1e-12 * np.linalg.norm(A, 2)

    def test_full_q(self):
        B = bd_leading_block(pascal_bd(4), 4, 2)
        qr = tn_qr(B, full=True)
        assert qr.Q.shape == (4, 4)
        np.testing.assert_allclose(qr.Q.T @ qr.Q, np.eye(4), atol=1e-13 * 4)

    def test_wide_rejected(self):
        with pytest.raises(DimensionMismatchError):
            tn_qr(BdMatrix(np.eye(2, 3)))


class TestLsqSolve:

    @pytest.mark.parametrize("B", [pascal_bd(4), random_tn_bd(4, seed=1, lo=1.0, hi=2.0)])
    def test_square_matches_solve(self, B):
        b = np.array([1.0, -2.0, 3.0, -4.0])
        np.testing.assert_allclose(tn_lsq_solve(B, b), tn_solve(B, b), rtol=1e-12)

    def test_exact_fit(self):
        B = bd_leading_block(vandermonde_bd([1, 2, 3, 4]), 4, 2)
        np.testing.assert_allclose(tn_lsq_solve(B, [3.0, 5.0, 7.0, 9.0]), [1.0, 2.0], rtol=1e-13, atol=1e-13)

    def test_random_against_normal_equations(self):
        full = random_tn_bd(6, seed=7, lo=1.0, hi=2.0)
        B = bd_leading_block(full, 6, 3)
        b = np.random.default_rng(7).uniform(-1.0, 1.0, 6)
        A_exact = [row[:3] for row in oracle.exact_expand(full)]
        exact = oracle.exact_normal_solve(A_exact, b)
        assert rel_err(tn_lsq_solve(B, b), exact).max() <= 1e-10

    @pytest.mark.parametrize("name,B", qr_fixtures())
    def test_residual_orthogonal(self, name, B):
        A = tn_expand(B)
        b = np.random.default_rng(3).uniform(-1.0, 1.0, B.rows)
        x = tn_lsq_solve(B, b)
        bound = 1e-10 * np.linalg.norm(A, np.inf) * np.linalg.norm(b, np.inf)
        assert np.max(np.abs(A.T @ (A @ x - b))) <= bound, name

    def test_rhs_length(self):
        with pytest.raises(DimensionMismatchError):
            tn_lsq_solve(bd_leading_block(pascal_bd(4), 4, 2), [1.0, 2.0])
