"""
Closed-form BD generators for structured TN families

Each generator returns BD(A) without ever forming A, using only products and
quotients of differences of sorted nodes, so every parameter is accurate to
a few ulps. The *_grid variants evaluate the same formulas in whatever
scalar type they are given (float or fractions.Fraction).

Families:
- Vandermonde  V[i][j] = x_i ** j            (0-based j)
- Cauchy       C[i][j] = 1 / (x_i + y_j)
- Hilbert      Cauchy with x = 0..n-1, y = 1..n
- Pascal       grid of all ones
- random TN    seeded uniform parameters
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, List, Sequence, Tuple, Union

import numpy as np

from .bd import BdMatrix
from .exceptions import (
    BadRangeError,
    DimensionMismatchError,
    NegativeNodeError,
    NodesNotSortedError,
    SingularPairError,
    ValidationError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeVector:
    """Strictly increasing, finite nodes x_i or y_j"""
    values: Tuple[Any, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        if len(vals) == 0:
            raise ValidationError("node vector is empty")
        for v in vals:
            if not math.isfinite(v):
                raise ValidationError(f"node {v!r} is not finite")
        for i in range(1, len(vals)):
            if not vals[i] > vals[i - 1]:
                raise NodesNotSortedError(
                    f"nodes must be strictly increasing: x[{i - 1}]={vals[i - 1]} x[{i}]={vals[i]}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.float64)


Nodes = Union[NodeVector, Sequence[Any]]


def _nodes(x: Nodes) -> NodeVector:
    return x if isinstance(x, NodeVector) else NodeVector(tuple(x))


def _prod(values) -> Any:
    out = 1
    for v in values:
        out = out * v
    return out


# ---------------------------------------------------------------------------
# Vandermonde
# ---------------------------------------------------------------------------

def vandermonde_bd_grid(x: Nodes) -> List[list]:
    """
    BD grid of V[i][j] = x_i ** j as nested lists in the nodes' scalar type.

    diagonal  p[j][j] = prod_{k<j} (x_j - x_k)
    lower     p[i][j] = prod_{k=1..j} (x_i - x_{i-k}) / (x_{i-1} - x_{i-1-k})
    upper     p[i][j] = x_i
    """
    x = _nodes(x).values
    if x[0] < 0:
        raise NegativeNodeError(f"Vandermonde nodes must be nonnegative, got x[0]={x[0]}")
    n = len(x)
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                grid[i][j] = _prod(x[j] - x[k] for k in range(j))
            elif i < j:
                grid[i][j] = x[i]
            else:
                grid[i][j] = _prod((x[i] - x[i - k]) / (x[i - 1] - x[i - 1 - k])
                                   for k in range(1, j + 1))
    return grid


def vandermonde_bd(x: Nodes) -> BdMatrix:
    """BD of the Vandermonde matrix on nonnegative increasing nodes"""
    x = _nodes([float(v) for v in _nodes(x)])
    return BdMatrix(vandermonde_bd_grid(x))


# ---------------------------------------------------------------------------
# Cauchy / Hilbert
# ---------------------------------------------------------------------------

def _cauchy_lower(x: Sequence[Any], y: Sequence[Any], i: int, j: int) -> Any:
    """Multiplier p[i][j], i > j, of C[r][c] = 1/(x_r + y_c), 0-based"""
    num = (x[i - j - 1] + y[j]) * _prod(x[i - 1] + y[k] for k in range(j))
    den = _prod(x[i] + y[k] for k in range(j + 1))
    # quotients in pairs; an empty product must not turn a Fraction into a float
    dx = _prod((x[i] - x[i - k]) / (x[i - 1] - x[i - 1 - k]) for k in range(1, j + 1))
    return (num / den) * dx



def _cauchy_pivot(x: Sequence[Any], y: Sequence[Any], j: int) -> Any:
    num = _prod((x[j] - x[k]) * (y[j] - y[k]) for k in range(j))
    den = (x[j] + y[j]) * _prod((x[j] + y[k]) * (x[k] + y[j]) for k in range(j))
    return num / den


def cauchy_bd_grid(x: Nodes, y: Nodes) -> List[list]:
    """
    BD grid of the Cauchy matrix C[i][j] = 1 / (x_i + y_j) in the nodes'
    scalar type. Upper parameters are the lower formula with x and y swapped.
    """
    x = _nodes(x).values
    y = _nodes(y).values
    n = len(x)
    if len(y) != n:
        raise DimensionMismatchError(f"Cauchy nodes differ in length: {n} vs {len(y)}")
    # sorted nodes: the smallest sum is x_0 + y_0
    if not x[0] + y[0] > 0:
        raise SingularPairError(f"x[0] + y[0] = {x[0] + y[0]} must be positive")
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                grid[i][j] = _cauchy_pivot(x, y, j)
            elif i > j:
                grid[i][j] = _cauchy_lower(x, y, i, j)
            else:
                grid[i][j] = _cauchy_lower(y, x, j, i)
    return grid


def cauchy_bd(x: Nodes, y: Nodes) -> BdMatrix:
    """BD of the Cauchy matrix 1 / (x_i + y_j) on increasing nodes"""
    x = [float(v) for v in _nodes(x)]
    y = [float(v) for v in _nodes(y)]
    return BdMatrix(cauchy_bd_grid(x, y))


def hilbert_bd(n: int) -> BdMatrix:
    """BD of the n x n Hilbert matrix 1 / (i + j + 1)"""
    if n < 1:
        raise ValidationError(f"order must be at least 1, got {n}")
    return cauchy_bd(range(n), range(1, n + 1))


# ---------------------------------------------------------------------------
# Pascal / random
# ---------------------------------------------------------------------------

def pascal_bd(n: int) -> BdMatrix:
    """BD of the symmetric Pascal matrix binom(i + j, i): all ones"""
    if n < 1:
        raise ValidationError(f"order must be at least 1, got {n}")
    return BdMatrix(np.ones((n, n)))


def random_tn_bd(n: int, seed: int = 0, lo: float = 0.1, hi: float = 10.0,
                 off_lo: float = 0.0) -> BdMatrix:
    """
    Seeded random grid: off-diagonal uniform on [off_lo, hi], pivots uniform
    on [lo, hi]. Any such grid is the BD of a nonsingular TN matrix.

    Floating Neville elimination recovers these grids to about 1e-8 only
    while the parameters stay close together (e.g. lo = off_lo = 0.9,
    hi = 1.1 up to n = 10); with the default ranges the expansion is too
    ill-conditioned from n = 6 on.
    """
    if n < 1:
        raise ValidationError(f"order must be at least 1, got {n}")
    if not (math.isfinite(lo) and math.isfinite(hi) and 0 < lo <= hi):
        raise BadRangeError(f"need 0 < lo <= hi finite, got lo={lo} hi={hi}")
    if not (math.isfinite(off_lo) and 0 <= off_lo <= hi):
        raise BadRangeError(f"need 0 <= off_lo <= hi, got off_lo={off_lo} hi={hi}")
    rng = np.random.default_rng(seed)
    grid = rng.uniform(off_lo, hi, size=(n, n))
    np.fill_diagonal(grid, rng.uniform(lo, hi, size=n))
    logger.debug(f"random_tn_bd: n={n} seed={seed} range=[{lo}, {hi}] off_lo={off_lo}")
    return BdMatrix(grid)

