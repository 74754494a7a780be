"""
Tests for singular values and eigenvalues computed from BD, against the
high-precision oracle.
"""
import math

import numpy as np
import pytest

from tnla import oracle
from tnla.bd import BdMatrix, tn_determinant, tn_expand
from tnla.exceptions import NoConvergenceError, NotSymmetricError, ValidationError
from tnla.experiments import DURER_KAPPA2
from tnla.generators import hilbert_bd, pascal_bd, random_tn_bd
from tnla.spectral import (
    Bidiagonal,
    Spectrum,
    SpectrumKind,
    TridiagLdlt,
    bidiagonal_sv,
    cond2,
    reduce_to_upper_bidiagonal,
    tn_eigenvalues_sym,
    tn_singular_values,
    tridiag_eigenvalues_ldlt,
)

from tests.helpers import structured_fixtures

GOLDEN = ((1 + math.sqrt(5)) / 2, (math.sqrt(5) - 1) / 2)
PASCAL_2 = ((3 + math.sqrt(5)) / 2, (3 - math.sqrt(5)) / 2)


def max_rel_err(values, reference) -> float:
    """Largest per-value relative error against oracle values"""
    assert len(values) == len(reference)
    return max(oracle.relative_error(v, r) for v, r in zip(values, reference))


def oracle_sv(B: BdMatrix, precision=None):
    return oracle.hp_spectrum(oracle.exact_expand(B), "singular", precision)


class TestSpectrum:

    def test_sorted_descending(self):
        s = Spectrum([1.0, 3.0, 2.0], SpectrumKind.SINGULAR)
        np.testing.assert_array_equal(s.values, [3.0, 2.0, 1.0])
        assert s.max == 3.0 and s.min == 1.0 and s.condition == 3.0
        assert len(s) == 3

    def test_to_dict(self):
        d = Spectrum([2.0, 1.0], "eigen", "ldlt", 4).to_dict()
        assert d == {'kind': 'eigen', 'method': 'ldlt', 'sweeps': 4, 'values': [2.0, 1.0]}


class TestBidiagonalSv:

    def test_diagonal(self):
        s = bidiagonal_sv(Bidiagonal([3.0, 4.0], [0.0]))
        np.testing.assert_array_equal(s.values, [4.0, 3.0])

    def test_golden(self):
        s = bidiagonal_sv(Bidiagonal([1.0, 1.0], [1.0]))
        np.testing.assert_allclose(s.values, GOLDEN, rtol=1e-14)

    def test_tiny_entries(self):
        M = Bidiagonal([1.0, 1e-150], [1e-150])
        s = bidiagonal_sv(M)
        assert np.all(s.values > 0)
        ref = oracle.hp_spectrum(M.to_dense(), "singular", precision=1024)
        assert max_rel_err(s.values, ref) <= 1e-13

    @pytest.mark.parametrize("seed", range(6))
    def test_graded_entries(self, seed):
        rng = np.random.default_rng(seed)
        n = 3 + seed
        M = Bidiagonal(10.0 ** rng.uniform(-10, 10, n), 10.0 ** rng.uniform(-10, 10, n - 1))
        ref = oracle.hp_spectrum(M.to_dense(), "singular", precision=1024)
        assert max_rel_err(bidiagonal_sv(M).values, ref) <= 1e-13

    def test_scale_equivariance(self):
        M = Bidiagonal([2.0, 0.5, 3.0, 1e-3], [1.0, 0.25, 4.0])
        base = bidiagonal_sv(M).values
        np.testing.assert_array_equal(bidiagonal_sv(M.scaled(2.0 ** 10)).values, base * 2.0 ** 10)
        np.testing.assert_allclose(bidiagonal_sv(M.scaled(3.0)).values, base * 3.0, rtol=1e-13)

    def test_sweep_budget(self):
        with pytest.raises(NoConvergenceError):
            bidiagonal_sv(Bidiagonal([1.0, 1.0], [1.0]), max_sweeps=0)

    def test_validation(self):
        with pytest.raises(ValidationError):
            Bidiagonal([1.0, -1.0], [0.0])
        with pytest.raises(ValidationError):
            Bidiagonal([1.0, 1.0], [0.0, 0.0])
        with pytest.raises(ValidationError):
            bidiagonal_sv(np.eye(2))


class TestReduction:

    def test_diagonal_grid(self):
        M = reduce_to_upper_bidiagonal(BdMatrix(np.diag([3.0, 1.0, 2.0])))
        np.testing.assert_array_equal(M.q, [3.0, 1.0, 2.0])
        np.testing.assert_array_equal(M.e, [0.0, 0.0])

    def test_pascal_2(self):
        s = bidiagonal_sv(reduce_to_upper_bidiagonal(pascal_bd(2)))
        np.testing.assert_allclose(s.values, PASCAL_2, rtol=1e-14)

    def test_hilbert_4(self):
        s = bidiagonal_sv(reduce_to_upper_bidiagonal(hilbert_bd(4)))
        assert max_rel_err(s.values, oracle_sv(hilbert_bd(4))) <= 1e-13

    @pytest.mark.parametrize("name,B", structured_fixtures(8))
    def test_singular_values_preserved(self, name, B):
        s = bidiagonal_sv(reduce_to_upper_bidiagonal(B))
        assert max_rel_err(s.values, oracle_sv(B)) <= 1e-13, name

    def test_rectangular_rejected(self):
        from tnla.exceptions import DimensionMismatchError
        with pytest.raises(DimensionMismatchError):
            reduce_to_upper_bidiagonal(BdMatrix(np.ones((3, 2))))


class TestTnSpectra:

    def test_identity(self):
        np.testing.assert_allclose(tn_singular_values(BdMatrix.identity(4)).values, np.ones(4), rtol=1e-15)
        np.testing.assert_allclose(tn_eigenvalues_sym(BdMatrix.identity(4)).values, np.ones(4), rtol=1e-15)

    def test_pascal_2(self):
        s = tn_singular_values(pascal_bd(2))
        np.testing.assert_allclose(s.values, PASCAL_2, rtol=1e-14)
        assert s.kind is SpectrumKind.SINGULAR
        assert s.method == "bd-reduction"

    def test_pascal_10_smallest(self):
        s = tn_singular_values(pascal_bd(10))
        ref = oracle.hp_spectrum(oracle.rational_pascal(10), "singular")
        assert oracle.relative_error(s.min, ref[-1]) <= 1e-14

    def test_hilbert_2_eigen(self):
        e = tn_eigenvalues_sym(hilbert_bd(2))
        expected = ((4 + math.sqrt(13)) / 6, (4 - math.sqrt(13)) / 6)
        np.testing.assert_allclose(e.values, expected, rtol=1e-14)
        assert e.kind is SpectrumKind.EIGEN

    def test_hilbert_10_smallest(self):
        e = tn_eigenvalues_sym(hilbert_bd(10))
        ref = oracle.hp_spectrum(oracle.rational_hilbert(10), "eigen-sym")
        assert oracle.relative_error(e.min, ref[-1]) <= 1e-14

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetricError):
            tn_eigenvalues_sym(BdMatrix([[1.0, 2.0], [3.0, 1.0]]))

    @pytest.mark.parametrize("B", [hilbert_bd(n) for n in (3, 6, 10)] + [pascal_bd(n) for n in (3, 6, 10)])
    def test_trace_and_determinant(self, B):
        e = tn_eigenvalues_sym(B)
        assert math.fsum(e.values) == pytest.approx(np.trace(tn_expand(B)), rel=1e-12)
        assert math.prod(e.values) == pytest.approx(tn_determinant(B), rel=1e-12)

    @pytest.mark.parametrize("seed", range(30))
    def test_positive_grid_gives_distinct_singular_values(self, seed):
        B = random_tn_bd(2 + seed % 11, seed=seed, off_lo=0.1)
        v = tn_singular_values(B).values
        assert np.all(v > 0.0)
        assert np.all(v[:-1] > v[1:])


class TestTridiagonal:

    def test_diagonal(self):
        e = tridiag_eigenvalues_ldlt(TridiagLdlt([2.0, 5.0, 1.0], [0.0, 0.0]))
        np.testing.assert_allclose(e.values, [5.0, 2.0, 1.0], rtol=1e-15)

    def test_pascal_2(self):
        e = tridiag_eigenvalues_ldlt(TridiagLdlt([1.0, 1.0], [1.0]))
        np.testing.assert_allclose(e.values, PASCAL_2, rtol=1e-14)
        assert e.method == "ldlt"

    def test_random_against_oracle(self):
        rng = np.random.default_rng(6)
        T = TridiagLdlt(rng.uniform(0.1, 10.0, 6), rng.uniform(0.0, 10.0, 5))
        ref = oracle.hp_spectrum(oracle.exact_expand(T.to_bd()), "eigen-sym")
        assert max_rel_err(tridiag_eigenvalues_ldlt(T).values, ref) <= 1e-13

    def test_dense_form(self):
        T = TridiagLdlt([1.0, 2.0], [3.0])
        np.testing.assert_array_equal(T.to_dense(), [[1.0, 3.0], [3.0, 11.0]])

    def test_validation(self):
        with pytest.raises(ValidationError):
            TridiagLdlt([1.0, 0.0], [1.0])
        with pytest.raises(ValidationError):
            TridiagLdlt([1.0, 1.0], [])


class TestCond2:

    def test_identity(self):
        assert cond2(BdMatrix.identity(3)) == pytest.approx(1.0, rel=1e-15)

    @pytest.mark.parametrize("B,expected", [
        (hilbert_bd(7), 4.7e8),
        (hilbert_bd(10), 1.6e13),
        (pascal_bd(10), 4.1e9),
    ])
    def test_structured(self, B, expected):
        assert expected / 1.05 <= cond2(B) <= expected * 1.05

    def test_durer(self, durer_grid, durer_matrix):
        kappa = cond2(BdMatrix(durer_grid))
        sv = oracle.hp_spectrum(durer_matrix, "singular")
        assert oracle.relative_error(kappa, sv[0] / sv[-1]) <= 1e-13
        assert DURER_KAPPA2 / 1.05 <= kappa <= DURER_KAPPA2 * 1.05


def test_random_fixture_against_dense_when_well_conditioned():
    B = random_tn_bd(3, seed=2, lo=1.0, hi=2.0)
    s = tn_singular_values(B)
    np.testing.assert_allclose(s.values, np.linalg.svd(tn_expand(B), compute_uv=False), rtol=1e-10)
