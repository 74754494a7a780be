"""
Conventional dense algorithms in binary64

These ignore total nonnegativity on purpose: LAPACK through numpy
(partial-pivoting LU, symmetric QR eigenvalues, Golub–Kahan SVD). Their
errors are small relative to the largest entry or singular value, not to
each computed quantity, which is what the structured pipeline is compared
against.
"""
from __future__ import annotations

import logging
from typing import Any, Sequence

import numpy as np

from .bd import as_vector
from .exceptions import (
    DimensionMismatchError,
    NoConvergenceError,
    NotSymmetricError,
    SingularToWorkingPrecisionError,
    ValidationError,
)
from .spectral import EPS, Spectrum, SpectrumKind

logger = logging.getLogger(__name__)


def _dense(A: Any) -> np.ndarray:
    A = np.array(A, dtype=np.float64)
    if A.ndim != 2 or A.size == 0:
        raise ValidationError(f"expected a non-empty matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix contains non-finite entries")
    return A


def lu_solve(A: Any, b: Sequence[float]) -> np.ndarray:
    """Gaussian elimination with partial pivoting (LAPACK gesv)"""
    A = _dense(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"lu_solve needs a square matrix, got {A.shape}")
    b = as_vector(b, A.shape[0])
    try:
        rcond = 1.0 / np.linalg.cond(A, 1)
        if not rcond >= EPS:
            raise SingularToWorkingPrecisionError(f"reciprocal condition {rcond:.3e} below machine epsilon")
        return np.linalg.solve(A, b)
    except np.linalg.LinAlgError as e:
        raise SingularToWorkingPrecisionError(f"lu_solve: {e}") from e


def dense_eig_sym(A: Any) -> Spectrum:
    """Eigenvalues of a symmetric matrix (LAPACK syevd), descending"""
    A = _dense(A)
    if A.shape[0] != A.shape[1] or not np.allclose(A, A.T, rtol=1e-12, atol=0.0):
        raise NotSymmetricError("dense_eig_sym needs a symmetric matrix")
    try:
        vals = np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as e:
        raise NoConvergenceError(f"dense_eig_sym: {e}") from e
    return Spectrum(vals, SpectrumKind.EIGEN, "dense")


def dense_svd(A: Any) -> Spectrum:
    """Singular values of any m x n matrix (LAPACK gesdd), descending"""
    A = _dense(A)
    try:
        vals = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as e:
        raise NoConvergenceError(f"dense_svd: {e}") from e
    return Spectrum(vals, SpectrumKind.SINGULAR, "dense")


def dense_inverse(A: Any) -> np.ndarray:
    """Inverse by LU (LAPACK getri), the conventional comparison for tn_inverse_expand"""
    A = _dense(A)
    try:
        return np.linalg.inv(A)
    except np.linalg.LinAlgError as e:
        raise SingularToWorkingPrecisionError(f"dense_inverse: {e}") from e
