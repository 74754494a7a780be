"""
Bidiagonal decomposition (BD) core for tnla

A nonsingular totally nonnegative (TN) matrix A of order n is stored as the
n x n grid B = BD(A) of Neville parameters:

    A = F̄_{n-1} ... F̄_1 · D · Ḡ_1 ... Ḡ_{n-1}

- D = diag(p[1][1], ..., p[n][n]) holds the pivots
- F̄_k is unit lower bidiagonal, entry (i, i-1) = p[i][i-k] for i = k+1..n
- Ḡ_k is unit upper bidiagonal, entry (j-1, j) = p[j-k][j] for j = k+1..n

Indices in this docstring are 1-based; the code is 0-based throughout.

Every kernel here except neville_bd is subtraction-free on nonnegative data,
so results carry small relative error in every entry, however tiny.

Usage:
    from tnla import BdMatrix, tn_expand, tn_solve

    B = BdMatrix([[1, 2, 2, 2], [1, 1, 3, 3], [1, 2, 6, 5], [1, 1.5, 2.5, 90]])
    A = tn_expand(B)            # Vandermonde matrix on nodes 2, 3, 5, 8
    x = tn_solve(B, [1, -1, 1, -1])
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Sequence, Tuple

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    FloatRangeError,
    InvalidBdError,
    NotTotallyNonnegativeError,
    ValidationError,
)

logger = logging.getLogger(__name__)

# Smallest positive normal binary64
_TINY = np.finfo(np.float64).tiny


class FactorKind(Enum):
    """Which factor of the BD product a FactorView reads"""
    LOWER = "lower"
    UPPER = "upper"
    DIAGONAL = "diagonal"


@dataclass(frozen=True, eq=False)
class BdMatrix:
    """
    Grid of BD parameters for an m x n TN matrix.

    The grid is copied on construction and stored read-only, so a BdMatrix
    can be shared between threads freely.
    """
    grid: np.ndarray
    """Parameters p[i][j]: pivots on the diagonal, multipliers off it"""

    def __post_init__(self):
        p = np.array(self.grid, dtype=np.float64)
        if p.ndim != 2 or p.shape[0] == 0 or p.shape[1] == 0:
            raise InvalidBdError(f"BD grid must be a non-empty 2-D array, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise InvalidBdError("BD grid contains non-finite entries")
        diag = np.diagonal(p)
        if np.any(diag <= 0):
            j = int(np.argmax(diag <= 0))
            raise InvalidBdError(f"pivot p[{j}][{j}] = {diag[j]!r} must be positive")
        off = p.copy()
        np.fill_diagonal(off, 0.0)
        if np.any(off < 0):
            i, j = np.argwhere(off < 0)[0]
            raise InvalidBdError(f"multiplier p[{i}][{j}] = {p[i, j]!r} must be nonnegative")
        p.setflags(write=False)
        object.__setattr__(self, "grid", p)

    @classmethod
    def identity(cls, n: int, cols: int = None) -> "BdMatrix":
        """Grid of the identity matrix (diagonal 1, off-diagonal 0)"""
        return cls(np.eye(n, cols if cols is not None else n))

    @property
    def rows(self) -> int:
        return self.grid.shape[0]

    @property
    def cols(self) -> int:
        return self.grid.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.grid.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        """Exact symmetry of the grid, i.e. of the matrix it represents"""
        return self.is_square and bool(np.array_equal(self.grid, self.grid.T))

    def factor(self, kind: FactorKind, k: int = 0) -> "FactorView":
        """View of F̄_k, Ḡ_k (1 <= k <= n-1) or D of a square grid"""
        return FactorView(kind=FactorKind(kind), k=k, source=self)

    def to_list(self) -> List[List[float]]:
        return self.grid.tolist()

    def to_dict(self) -> dict:
        """Serialize for JSON/storage"""
        return {'rows': self.rows, 'cols': self.cols, 'grid': self.to_list()}

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, BdMatrix):
            return NotImplemented
        return bool(np.array_equal(self.grid, other.grid))

    __hash__ = None

    def __repr__(self) -> str:
        return f"BdMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class FactorView:
    """
    One factor of the BD product, read straight out of the grid.

    Never builds an n x n array: entries() returns the off-diagonal run of
    F̄_k / Ḡ_k (zeros included, one value per row/column pair) or the pivots,
    and apply()/solve() work in O(n).
    """
    kind: FactorKind
    k: int
    source: BdMatrix

    def __post_init__(self):
        n = self.source.rows
        if not self.source.is_square:
            raise DimensionMismatchError(f"factor views need a square grid, got {self.source.shape}")
        if self.kind is not FactorKind.DIAGONAL and not 1 <= self.k <= n - 1:
            raise ValidationError(f"factor index {self.k} out of range 1..{n - 1}")

    def entries(self) -> Tuple[float, ...]:
        """Off-diagonal run (length n-1) or diagonal (length n)"""
        p = self.source.grid
        n = p.shape[0]
        if self.kind is FactorKind.DIAGONAL:
            return tuple(float(v) for v in np.diagonal(p))
        k = self.k
        if self.kind is FactorKind.LOWER:
            # entry (i, i-1) for 0-based rows i = 1..n-1
            return tuple(float(p[i, i - k]) if i >= k else 0.0 for i in range(1, n))
        # entry (j-1, j) for 0-based columns j = 1..n-1
        return tuple(float(p[j - k, j]) if j >= k else 0.0 for j in range(1, n))

    def to_dense(self) -> np.ndarray:
        """Materialize the factor (tests and debugging only)"""
        n = self.source.rows
        if self.kind is FactorKind.DIAGONAL:
            return np.diag(self.entries())
        off = np.array(self.entries())
        return np.eye(n) + (np.diag(off, -1) if self.kind is FactorKind.LOWER else np.diag(off, 1))

    def apply(self, v: Sequence[float]) -> np.ndarray:
        """Product factor @ v"""
        v = np.asarray(v, dtype=np.float64)
        if self.kind is FactorKind.DIAGONAL:
            return np.asarray(self.entries()) * v
        off = np.asarray(self.entries())
        out = v.copy()
        if self.kind is FactorKind.LOWER:
            out[1:] += off * v[:-1]
        else:
            out[:-1] += off * v[1:]
        return out

    def solve(self, v: Sequence[float]) -> np.ndarray:
        """Solve factor @ y = v by one two-term substitution"""
        y = np.array(v, dtype=np.float64)
        if self.kind is FactorKind.DIAGONAL:
            return y / np.asarray(self.entries())
        off = self.entries()
        n = len(y)
        if self.kind is FactorKind.LOWER:
            for i in range(1, n):
                y[i] -= off[i - 1] * y[i - 1]
        else:
            for i in range(n - 2, -1, -1):
                y[i] -= off[i] * y[i + 1]
        return y


def as_bd(B: Any) -> BdMatrix:
    """Accept a BdMatrix or anything BdMatrix() accepts"""
    return B if isinstance(B, BdMatrix) else BdMatrix(B)


def as_vector(b: Sequence[float], n: int = None) -> np.ndarray:
    """Copy b into a finite float64 vector, checking its length against n"""
    v = np.array(b, dtype=np.float64)
    if v.ndim != 1:
        raise ValidationError(f"expected a vector, got shape {v.shape}")
    if n is not None and v.shape[0] != n:
        raise DimensionMismatchError(f"vector length {v.shape[0]} does not match order {n}")
    if not np.all(np.isfinite(v)):
        raise ValidationError("vector contains non-finite entries")
    return v


def _require_square(B: BdMatrix, what: str) -> int:
    if not B.is_square:
        raise DimensionMismatchError(f"{what} needs a square BD grid, got {B.rows}x{B.cols}")
    return B.rows


def _check_range(M: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(M)):
        raise FloatRangeError(f"{what} overflowed the binary64 range", kind="overflow")
    return M


def _padded(B: BdMatrix) -> np.ndarray:
    """Embed a rectangular grid into the identity grid of order max(m, n)"""
    m, n = B.shape
    s = max(m, n)
    p = np.eye(s)
    p[:m, :n] = B.grid
    return p


def _lower_run(p: np.ndarray, k: int) -> np.ndarray:
    """Subdiagonal of F̄_k as a length n-1 array"""
    n = p.shape[0]
    return np.array([p[i, i - k] if i >= k else 0.0 for i in range(1, n)])


def _upper_run(p: np.ndarray, k: int) -> np.ndarray:
    """Superdiagonal of Ḡ_k as a length n-1 array"""
    n = p.shape[0]
    return np.array([p[j - k, j] if j >= k else 0.0 for j in range(1, n)])


# ---------------------------------------------------------------------------
# Expansion, inverse, solve, determinant
# ---------------------------------------------------------------------------

def tn_expand(B: BdMatrix) -> np.ndarray:
    """
    Dense matrix represented by B, using only products and sums of
    nonnegative numbers.

    Rectangular grids are expanded through the identity-padded square grid
    and the leading m x n block is returned.
    """
    B = as_bd(B)
    m, n = B.shape
    p = _padded(B)
    s = p.shape[0]
    with np.errstate(over="ignore", invalid="ignore"):
        A = np.diag(np.diagonal(p)).copy()
        # D Ḡ_1 ... Ḡ_{s-1}: column j += u_j * column j-1
        for k in range(1, s):
            A[:, 1:] += A[:, :-1] * _upper_run(p, k)
        # F̄_{s-1} ... F̄_1 applied from the left, F̄_1 first
        for k in range(1, s):
            A[1:, :] += _lower_run(p, k)[:, None] * A[:-1, :]
    logger.debug(f"tn_expand: {m}x{n} grid expanded")
    return _check_range(A[:m, :n].copy(), "tn_expand")


def tn_inverse_expand(B: BdMatrix) -> np.ndarray:
    """
    Inverse of the matrix represented by a square grid.

    Builds W = |Ḡ_{n-1}^-1| ... |Ḡ_1^-1| D^-1 |F̄_1^-1| ... |F̄_{n-1}^-1|
    from the identity, each |unit bidiagonal inverse| applied as an additive
    recurrence, then restores the checkerboard signs.
    """
    B = as_bd(B)
    n = _require_square(B, "tn_inverse_expand")
    p = B.grid
    W = np.eye(n)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n - 1, 0, -1):
            sub = _lower_run(p, k)
            for i in range(1, n):
                W[i, :] += sub[i - 1] * W[i - 1, :]
        W /= np.diagonal(p)[:, None]
        for k in range(1, n):
            sup = _upper_run(p, k)
            for i in range(n - 2, -1, -1):
                W[i, :] += sup[i] * W[i + 1, :]
    signs = np.where(np.add.outer(np.arange(n), np.arange(n)) % 2 == 0, 1.0, -1.0)
    return _check_range(signs * W, "tn_inverse_expand")


def tn_solve(B: BdMatrix, b: Sequence[float], transpose: bool = False) -> np.ndarray:
    """
    Solve A x = b (or A^T x = b) for the matrix represented by B in O(n^2).

    With a sign-alternating b every substitution adds like-signed terms.
    """
    B = as_bd(B)
    n = _require_square(B, "tn_solve")
    p = B.grid.T if transpose else B.grid
    x = as_vector(b, n)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n - 1, 0, -1):
            sub = _lower_run(p, k)
            for i in range(k, n):
                x[i] -= sub[i - 1] * x[i - 1]
        x /= np.diagonal(p)
        for k in range(1, n):
            sup = _upper_run(p, k)
            for i in range(n - 2, k - 2, -1):
                x[i] -= sup[i] * x[i + 1]
    return _check_range(x, "tn_solve")


def tn_determinant(B: BdMatrix) -> float:
    """Product of the pivots, left to right"""
    B = as_bd(B)
    _require_square(B, "tn_determinant")
    det = 1.0
    for d in np.diagonal(B.grid):
        det *= float(d)
    if np.isinf(det):
        raise FloatRangeError("determinant overflows binary64", kind="overflow")
    if det < _TINY:
        raise FloatRangeError(f"determinant {det!r} underflows the normal range", kind="underflow")
    return det


def bd_transpose(B: BdMatrix) -> BdMatrix:
    """BD(A^T) is the transposed grid"""
    B = as_bd(B)
    return BdMatrix(B.grid.T)


def bd_leading_block(B: BdMatrix, rows: int, cols: int) -> BdMatrix:
    """BD of the leading rows x cols submatrix of the represented matrix"""
    B = as_bd(B)
    if not (1 <= rows <= B.rows and 1 <= cols <= B.cols):
        raise DimensionMismatchError(f"block {rows}x{cols} does not fit in {B.rows}x{B.cols}")
    return BdMatrix(B.grid[:rows, :cols])


# ---------------------------------------------------------------------------
# Neville elimination
# ---------------------------------------------------------------------------

def neville_parameters(a: List[list]) -> Tuple[List[list], list]:
    """
    Neville elimination of a square matrix given as nested lists.

    Works on any field type with exact zero tests (float or Fraction).
    Returns (multipliers, pivots) where multipliers[i][j], i > j, is the
    factor that zeroed entry (i, j) using row i-1.

    Raises NotTotallyNonnegativeError when a row exchange would be needed or
    a multiplier/pivot has the wrong sign.
    """
    n = len(a)
    a = [list(row) for row in a]
    if any(len(row) != n for row in a):
        raise DimensionMismatchError("Neville elimination needs a square matrix")
    mult = [[0] * n for _ in range(n)]
    for k in range(n - 1):
        for i in range(n - 1, k, -1):
            below, above = a[i][k], a[i - 1][k]
            if below == 0:
                continue
            if above == 0:
                raise NotTotallyNonnegativeError(
                    f"nonzero entry at ({i}, {k}) below a zero: elimination needs a row exchange")
            m = below / above
            if m < 0:
                raise NotTotallyNonnegativeError(f"negative multiplier {m} at ({i}, {k})")
            mult[i][k] = m
            a[i][k] = 0 * below
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - m * a[i - 1][j]
    pivots = [a[j][j] for j in range(n)]
    for j, d in enumerate(pivots):
        if not d > 0:
            raise NotTotallyNonnegativeError(f"pivot {d} at position {j} is not positive")
    return mult, pivots


def neville_grid(a: List[list]) -> List[list]:
    """BD grid (nested lists) from Neville elimination of a and of a^T"""
    lower, pivots = neville_parameters(a)
    upper, _ = neville_parameters([list(col) for col in zip(*a)])
    n = len(a)
    return [[lower[i][j] if i > j else (pivots[i] if i == j else upper[j][i])
             for j in range(n)] for i in range(n)]


def neville_bd(A: Any) -> BdMatrix:
    """
    BD of a dense square matrix by Neville elimination of A and A^T.

    Uses true subtractions, so the result is not guaranteed to be accurate
    in the relative sense; prefer the closed-form generators when available.
    """
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"neville_bd needs a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix contains non-finite entries")
    grid = neville_grid(A.tolist())
    logger.debug(f"neville_bd: {A.shape[0]}x{A.shape[0]} eliminated")
    return BdMatrix(grid)
