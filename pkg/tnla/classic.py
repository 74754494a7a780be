"""
Björck–Pereyra solver for the dual Vandermonde (interpolation) system

Two stages, each a product of bidiagonal factors applied in place:

    1. newton_coefficients: divided differences, c = U^T f
    2. newton_to_monomial: change of basis, a = L^T c

Coefficients are returned in ascending degree: a[0] + a[1] t + ... + a[n] t^n.
Indexing follows the interpolation convention x_0 .. x_n.
"""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from .exceptions import DimensionMismatchError, DuplicateNodesError, ValidationError

logger = logging.getLogger(__name__)


def _operands(x: Sequence[float], v: Sequence[float]):
    x = np.array(x, dtype=np.float64)
    v = np.array(v, dtype=np.float64)
    if x.ndim != 1 or v.ndim != 1 or x.size == 0:
        raise ValidationError("nodes and values must be non-empty vectors")
    if x.shape != v.shape:
        raise DimensionMismatchError(f"{x.size} nodes but {v.size} values")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
        raise ValidationError("nodes and values must be finite")
    return x, v


def newton_coefficients(x: Sequence[float], f: Sequence[float]) -> np.ndarray:
    """Divided differences of f on nodes x (Newton-basis coefficients)"""
    x, c = _operands(x, f)
    n = x.size - 1
    for k in range(n):
        den = x[k + 1:] - x[:n - k]
        if np.any(den == 0):
            i = int(np.argmax(den == 0)) + k + 1
            raise DuplicateNodesError(f"nodes x[{i}] and x[{i - k - 1}] coincide ({x[i]})")
        # c_i <- (c_i - c_{i-1}) / (x_i - x_{i-k-1}) for i = n .. k+1
        c[k + 1:] = (c[k + 1:] - c[k:n]) / den
    return c


def newton_to_monomial(x: Sequence[float], c: Sequence[float]) -> np.ndarray:
    """Monomial coefficients of the Newton form with centers x and coefficients c"""
    x, a = _operands(x, c)
    n = x.size - 1
    for k in range(n - 1, -1, -1):
        # a_i <- a_i - x_k a_{i+1} for i = k .. n-1
        a[k:n] -= x[k] * a[k + 1:n + 1]
    return a


def bp_dual_solve(x: Sequence[float], f: Sequence[float]) -> np.ndarray:
    """Coefficients a of the interpolant: sum_j a_j x_i^j = f_i"""
    a = newton_to_monomial(x, newton_coefficients(x, f))
    logger.debug(f"bp_dual_solve: {len(a)} nodes")
    return a


def horner(a: Sequence[float], t: float) -> float:
    """Evaluate sum_j a_j t^j"""
    out = 0.0
    for coef in reversed(a):
        out = out * t + coef
    return out
