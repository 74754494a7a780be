"""
Orthogonal factor peeling on BD grids

Works directly on a writable float64 grid p (0-based) representing

    A = [lower word] · D · [upper word]

where the lower word is F̄_{n-1} ... F̄_1 and each F̄_g is the product of
elementary factors L_i(p[i][i-g]) = I + p[i][i-g] e_i e_{i-1}^T in
increasing i; the upper word is the mirror image.

peel_lower(p, k, col) zeroes the lower parameter p[k][col] by a Givens
rotation on rows (k-1, k) applied from the left. The rotation leaves a 2x2
upper-triangular remainder diag(d1, d2) · U_k(y) which is carried to the
right through the remaining lower factors and D, and finally merged into the
upper word. Every update multiplies, divides or adds nonnegative numbers.

Precondition: all lower parameters in columns < col, and in column col
below row k, are already zero.

Removing an upper parameter from the right is the same operation on the
transposed view p.T.
"""
from __future__ import annotations

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from .exceptions import ReductionFailureError

logger = logging.getLogger(__name__)

# (row_a, row_b, c, s) acting as [[c, s], [-s, c]] on rows row_a < row_b
Rotation = Tuple[int, int, float, float]


def merge_upper(p: np.ndarray, m: int, t: float) -> None:
    """Absorb U_m(t) into the upper word from the left, cascading block by block"""
    n = p.shape[0]
    g = 1
    while t != 0.0:
        if m == n - 1:
            p[m - g, m] += t
            return
        a = p[m - g, m]
        b = p[m + 1 - g, m + 1]
        s = a + t
        # U_m(t) U_{m+1}(b) U_m(a) = U_{m+1}(ab/s) U_m(s) U_{m+1}(bt/s)
        p[m + 1 - g, m + 1] = a * b / s
        p[m - g, m] = s
        t = b * t / s
        m += 1
        g += 1


def peel_lower(p: np.ndarray, k: int, col: int,
               rotations: Optional[List[Rotation]] = None) -> None:
    """Zero p[k][col] (k > col) by a left rotation; see module docstring"""
    x = p[k, col]
    if x == 0.0:
        return
    n = p.shape[0]
    g = k - col
    r = math.hypot(1.0, x)
    if rotations is not None:
        rotations.append((k - 1, k, 1.0 / r, x / r))
    d1, d2 = r, 1.0 / r
    y = (x / r) / r
    p[k, col] = 0.0

    # remainder of block g: only L_{k+1} is affected
    if k + 1 < n:
        p[k + 1, col + 1] /= d2

    for h in range(g - 1, 0, -1):
        if k - 1 - h >= 0:
            p[k - 1, k - 1 - h] *= d1
        z = p[k, k - h]
        w = 1.0 + z * y
        p[k, k - h] = d2 * z / (d1 * w)
        d1 *= w
        d2 /= w
        y /= w
        if k + 1 < n:
            p[k + 1, k + 1 - h] /= d2

    # through D
    y *= p[k, k] / p[k - 1, k - 1]
    p[k - 1, k - 1] *= d1
    p[k, k] *= d2
    merge_upper(p, k, y)


def check_grid(p: np.ndarray, stage: str) -> None:
    """Trap sign or range violations introduced by the peeling updates"""
    if not np.all(np.isfinite(p)):
        raise ReductionFailureError(f"{stage}: non-finite BD parameter")
    if np.any(p < 0):
        i, j = np.argwhere(p < 0)[0]
        raise ReductionFailureError(f"{stage}: parameter p[{i}][{j}] = {p[i, j]!r} went negative")
    if np.any(np.diagonal(p) <= 0):
        raise ReductionFailureError(f"{stage}: pivot lost positivity")


def triangularize(p: np.ndarray, columns: int,
                  rotations: Optional[List[Rotation]] = None) -> None:
    """Zero the lower parameters of the first `columns` columns (QR sweep)"""
    n = p.shape[0]
    for col in range(columns):
        for k in range(n - 1, col, -1):
            peel_lower(p, k, col, rotations)
    logger.debug(f"triangularize: {columns} columns of a {n}x{n} grid")


def bidiagonalize(p: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Reduce a square grid to D'·Ḡ_1' in Golub–Kahan order.

    Column i is cleared from the left, then row i from the right down to
    p[i][i+1]. Returns (q, e) of the upper bidiagonal D'·Ḡ_1'.
    """
    n = p.shape[0]
    pt = p.T
    for i in range(n - 1):
        for k in range(n - 1, i, -1):
            peel_lower(p, k, i)
        for j in range(n - 1, i + 1, -1):
            peel_lower(pt, j, i)
    check_grid(p, "bidiagonalize")
    q = np.diagonal(p).copy()
    e = q[:-1] * np.diagonal(p, 1)
    return q, e
