"""
tnla: accurate linear algebra with totally nonnegative matrices

A nonsingular totally nonnegative (TN) matrix is handled through its
bidiagonal decomposition BD(A), an n x n grid of nonnegative parameters.
Given the grid, every computation here is subtraction-free or uses only
orthogonal rotations, so results are accurate to a few ulps in every
entry and every singular value, however ill-conditioned the matrix is.

Solving a system:
    from tnla import hilbert_bd, tn_solve

    B = hilbert_bd(7)
    x = tn_solve(B, [1/21, -1/21, 1/23, -1/23, 1/29, -1/29, 1/31])

Spectra:
    from tnla import pascal_bd, tn_singular_values, cond2

    sv = tn_singular_values(pascal_bd(10))
    print(sv.min, cond2(pascal_bd(10)))

Least squares:
    from tnla import vandermonde_bd, bd_leading_block, tn_lsq_solve

    B = bd_leading_block(vandermonde_bd([1, 2, 3, 4]), 4, 2)
    coef = tn_lsq_solve(B, [3, 5, 7, 9])       # fits 1 + 2 t

Checking against exact arithmetic:
    from tnla import oracle

    exact = oracle.exact_solve(oracle.rational_hilbert(7), rhs)
"""
__version__ = '0.1.0'
__author__ = 'tnla developers'

from .bd import (
    BdMatrix,
    FactorKind,
    FactorView,
    tn_expand,
    tn_inverse_expand,
    tn_solve,
    tn_determinant,
    neville_bd,
    bd_transpose,
    bd_leading_block,
)
from .generators import (
    NodeVector,
    vandermonde_bd,
    cauchy_bd,
    hilbert_bd,
    pascal_bd,
    random_tn_bd,
)
from .classic import newton_coefficients, newton_to_monomial, bp_dual_solve, horner
from .spectral import (
    Bidiagonal,
    TridiagLdlt,
    Spectrum,
    SpectrumKind,
    bidiagonal_sv,
    reduce_to_upper_bidiagonal,
    tn_singular_values,
    tn_eigenvalues_sym,
    tridiag_eigenvalues_ldlt,
    cond2,
)
from .qr import QrResult, tn_qr, tn_lsq_solve
from .baseline import lu_solve, dense_eig_sym, dense_svd, dense_inverse
from .fileio import read_bd, read_matrix, read_vector, write_bd, write_matrix, write_vector
from .experiments import ExperimentRow, ExperimentReport, run_experiments
from . import oracle
from .exceptions import (
    TnlaError,
    ValidationError,
    InvalidBdError,
    DimensionMismatchError,
    NodesNotSortedError,
    NegativeNodeError,
    SingularPairError,
    DuplicateNodesError,
    BadRangeError,
    NotSymmetricError,
    DomainError,
    NotTotallyNonnegativeError,
    SingularMatrixError,
    SingularToWorkingPrecisionError,
    FloatRangeError,
    ConvergenceError,
    NoConvergenceError,
    PrecisionNotReachedError,
    ReductionFailureError,
    UsageError,
    ParseError,
    GateFailureError,
)

__all__ = [
    # BD core
    'BdMatrix',
    'FactorKind',
    'FactorView',
    'tn_expand',
    'tn_inverse_expand',
    'tn_solve',
    'tn_determinant',
    'neville_bd',
    'bd_transpose',
    'bd_leading_block',

    # Structured generators
    'NodeVector',
    'vandermonde_bd',
    'cauchy_bd',
    'hilbert_bd',
    'pascal_bd',
    'random_tn_bd',

    # Björck–Pereyra
    'newton_coefficients',
    'newton_to_monomial',
    'bp_dual_solve',
    'horner',

    # Spectra
    'Bidiagonal',
    'TridiagLdlt',
    'Spectrum',
    'SpectrumKind',
    'bidiagonal_sv',
    'reduce_to_upper_bidiagonal',
    'tn_singular_values',
    'tn_eigenvalues_sym',
    'tridiag_eigenvalues_ldlt',
    'cond2',

    # QR / least squares
    'QrResult',
    'tn_qr',
    'tn_lsq_solve',

    # Conventional baselines
    'lu_solve',
    'dense_eig_sym',
    'dense_svd',
    'dense_inverse',

    # Files
    'read_bd',
    'read_matrix',
    'read_vector',
    'write_bd',
    'write_matrix',
    'write_vector',

    # Experiments
    'ExperimentRow',
    'ExperimentReport',
    'run_experiments',
    'oracle',

    # Exceptions
    'TnlaError',
    'ValidationError',
    'InvalidBdError',
    'DimensionMismatchError',
    'NodesNotSortedError',
    'NegativeNodeError',
    'SingularPairError',
    'DuplicateNodesError',
    'BadRangeError',
    'NotSymmetricError',
    'DomainError',
    'NotTotallyNonnegativeError',
    'SingularMatrixError',
    'SingularToWorkingPrecisionError',
    'FloatRangeError',
    'ConvergenceError',
    'NoConvergenceError',
    'PrecisionNotReachedError',
    'ReductionFailureError',
    'UsageError',
    'ParseError',
    'GateFailureError',
]
