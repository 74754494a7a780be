"""
QR factorization and least squares from BD

tn_qr removes the lower bidiagonal factors with Givens rotations from the
left, keeping R in BD form (lower parameters zero) with every parameter
nonnegative. Q is accumulated densely; R carries the relative accuracy.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from . import _reduction
from .bd import BdMatrix, _padded, as_bd, as_vector, tn_solve
from .exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QrResult:
    """A = Q · R with R upper triangular TN, given by its BD grid"""
    Q: np.ndarray
    """Orthonormal columns: m x n (thin) or m x m (full)"""

    R: BdMatrix
    """n x n grid with zero lower part"""


def _accumulate(m: int, rotations: List[_reduction.Rotation]) -> np.ndarray:
    Q = np.eye(m)
    for a, b, c, s in rotations:
        qa = Q[:, a].copy()
        qb = Q[:, b]
        Q[:, a] = c * qa + s * qb
        Q[:, b] = c * qb - s * qa
    return Q


def tn_qr(B: BdMatrix, full: bool = False) -> QrResult:
    """
    QR of the m x n (m >= n) TN matrix represented by B.

    Rectangular grids are padded to m x m with the identity grid; the thin
    factor is the first n columns of Q and the leading n x n block of R.

    Q R reproduces A to a normwise relative error of a few ulps times m.
    Componentwise agreement depends on how strongly A is graded; 1e-12 holds
    for mildly graded inputs but not in general.
    """
    B = as_bd(B)
    m, n = B.shape
    if m < n:
        raise DimensionMismatchError(f"tn_qr needs rows >= cols, got {m}x{n}")
    p = _padded(B)
    rotations: List[_reduction.Rotation] = []
    _reduction.triangularize(p, min(n, m - 1), rotations)
    _reduction.check_grid(p, "tn_qr")
    R = np.triu(p[:n, :n])
    Q = _accumulate(m, rotations)
    logger.debug(f"tn_qr: {m}x{n}, {len(rotations)} rotations")
    return QrResult(Q=Q if full else Q[:, :n].copy(), R=BdMatrix(R))


def tn_lsq_solve(B: BdMatrix, b: Sequence[float]) -> np.ndarray:
    """Least-squares solution of A x ~ b via R x = Q^T b"""
    B = as_bd(B)
    b = as_vector(b, B.rows)
    qr = tn_qr(B)
    return tn_solve(qr.R, qr.Q.T @ b)
