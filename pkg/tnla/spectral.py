"""
Singular values and eigenvalues from BD to high relative accuracy

The pipeline for a TN matrix given by its BD grid:

    reduce_to_upper_bidiagonal   orthogonal factor peeling, grid stays >= 0
    bidiagonal_sv                zero-shift implicit QR on the bidiagonal

Symmetric grids represent symmetric positive definite matrices, so their
eigenvalues are the singular values. The tridiagonal case A = L D L^T goes
straight to the bidiagonal kernel through L D^(1/2).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from . import _reduction
from .bd import BdMatrix, _require_square, as_bd, tn_expand
from .exceptions import NoConvergenceError, NotSymmetricError, ValidationError

logger = logging.getLogger(__name__)

EPS = float(np.finfo(np.float64).eps)


class SpectrumKind(Enum):
    SINGULAR = "singular"
    EIGEN = "eigen"


def _frozen(values: Sequence[float]) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Bidiagonal:
    """Upper bidiagonal matrix: diagonal q (length n), superdiagonal e (length n-1)"""
    q: np.ndarray
    e: np.ndarray

    def __post_init__(self):
        q = _frozen(self.q).reshape(-1)
        e = _frozen(self.e).reshape(-1)
        if q.size == 0:
            raise ValidationError("bidiagonal matrix is empty")
        if e.size != q.size - 1:
            raise ValidationError(f"superdiagonal length {e.size}, expected {q.size - 1}")
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(e))):
            raise ValidationError("bidiagonal entries must be finite")
        if np.any(q < 0) or np.any(e < 0):
            raise ValidationError("bidiagonal entries must be nonnegative")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "e", e)

    @property
    def n(self) -> int:
        return self.q.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.q) + np.diag(self.e, 1)

    def scaled(self, s: float) -> "Bidiagonal":
        return Bidiagonal(self.q * s, self.e * s)


@dataclass(frozen=True, eq=False)
class TridiagLdlt:
    """Symmetric tridiagonal A = L D L^T with unit lower bidiagonal L"""
    d: np.ndarray
    """Diagonal of D, all positive"""

    l: np.ndarray
    """Subdiagonal of L, all nonnegative"""

    def __post_init__(self):
        d = _frozen(self.d).reshape(-1)
        l = _frozen(self.l).reshape(-1)
        if d.size == 0 or l.size != d.size - 1:
            raise ValidationError(f"need len(l) == len(d) - 1 >= 0, got {l.size} and {d.size}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(l))):
            raise ValidationError("LDL^T entries must be finite")
        if np.any(d <= 0) or np.any(l < 0):
            raise ValidationError("need d > 0 and l >= 0")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "l", l)

    @property
    def n(self) -> int:
        return self.d.size

    def to_bd(self) -> BdMatrix:
        """The same matrix as a symmetric BD grid"""
        p = np.diag(self.d)
        idx = np.arange(self.n - 1)
        p[idx + 1, idx] = self.l
        p[idx, idx + 1] = self.l
        return BdMatrix(p)

    def to_dense(self) -> np.ndarray:
        return tn_expand(self.to_bd())


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Singular values or eigenvalues, sorted descending"""
    values: np.ndarray
    kind: SpectrumKind
    method: str = "bidiagonal"
    """Pipeline that produced the values"""
    sweeps: int = 0
    """QR sweeps spent in the bidiagonal kernel"""

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64).reshape(-1)
        vals = -np.sort(-vals, kind="stable")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "kind", SpectrumKind(self.kind))

    def __len__(self) -> int:
        return self.values.size

    @property
    def max(self) -> float:
        return float(self.values[0])

    @property
    def min(self) -> float:
        return float(self.values[-1])

    @property
    def condition(self) -> float:
        return self.max / self.min

    def relabel(self, kind: SpectrumKind, method: Optional[str] = None) -> "Spectrum":
        return Spectrum(self.values, kind, method or self.method, self.sweeps)

    def to_dict(self) -> dict:
        """Serialize for JSON/storage"""
        return {
            'kind': self.kind.value,
            'method': self.method,
            'sweeps': self.sweeps,
            'values': self.values.tolist(),
        }


# ---------------------------------------------------------------------------
# Bidiagonal kernel
# ---------------------------------------------------------------------------

def _rot(f: float, g: float):
    """Givens pair for nonnegative f, g: returns (c, s, r) with r = hypot(f, g)"""
    if g == 0.0:
        return 1.0, 0.0, f
    if f == 0.0:
        return 0.0, 1.0, g
    r = math.hypot(f, g)
    return f / r, g / r, r


def _zero_shift_sweep(d: np.ndarray, e: np.ndarray) -> None:
    """One implicit zero-shift QR sweep, top to bottom, in place"""
    m = d.size
    cs = 1.0
    oldcs = 1.0
    oldsn = 0.0
    for i in range(m - 1):
        cs, sn, r = _rot(d[i] * cs, e[i])
        if i > 0:
            e[i - 1] = oldsn * r
        oldcs, oldsn, d[i] = _rot(oldcs * r, d[i + 1] * sn)
    h = d[m - 1] * cs
    d[m - 1] = h * oldcs
    e[m - 2] = h * oldsn


def _deflate(d: np.ndarray, e: np.ndarray, lo: int, hi: int, tol: float) -> None:
    """Zero superdiagonal entries that are negligible relative to the block"""
    mu = d[lo]
    for j in range(lo, hi):
        if e[j] <= tol * mu:
            e[j] = 0.0
            mu = d[j + 1]
        else:
            mu = d[j + 1] * (mu / (mu + e[j]))
    mu = d[hi]
    for j in range(hi - 1, lo - 1, -1):
        if e[j] <= tol * mu:
            e[j] = 0.0
            mu = d[j]
        else:
            mu = d[j] * (mu / (mu + e[j]))


def bidiagonal_sv(M: Bidiagonal, tol: float = EPS, max_sweeps: Optional[int] = None) -> Spectrum:
    """
    All singular values of an upper bidiagonal matrix, each to high relative
    accuracy, by zero-shift QR with relative deflation.

    The sweep direction follows the active block: the bulge is chased
    toward the smaller end.
    """
    if not isinstance(M, Bidiagonal):
        raise ValidationError(f"expected Bidiagonal, got {type(M).__name__}")
    n = M.n
    d = M.q.copy()
    e = M.e.copy()
    budget = max_sweeps if max_sweeps is not None else 30 * n * n
    sweeps = 0
    if n > 1:
        _deflate(d, e, 0, n - 1, tol)
    hi = n - 1
    while hi > 0:
        if e[hi - 1] == 0.0:
            hi -= 1
            continue
        lo = hi - 1
        while lo > 0 and e[lo - 1] != 0.0:
            lo -= 1
        if sweeps >= budget:
            raise NoConvergenceError(f"bidiagonal_sv: no convergence after {sweeps} sweeps (n={n})")
        if d[lo] >= d[hi]:
            _zero_shift_sweep(d[lo:hi + 1], e[lo:hi])
        else:
            _zero_shift_sweep(d[lo:hi + 1][::-1], e[lo:hi][::-1])
        sweeps += 1
        _deflate(d, e, lo, hi, tol)
    logger.debug(f"bidiagonal_sv: n={n} converged in {sweeps} sweeps")
    return Spectrum(d, SpectrumKind.SINGULAR, "bidiagonal", sweeps)


# ---------------------------------------------------------------------------
# BD pipelines
# ---------------------------------------------------------------------------

def reduce_to_upper_bidiagonal(B: BdMatrix) -> Bidiagonal:
    """
    Upper bidiagonal matrix with the same singular values as the matrix
    represented by B, obtained by peeling the outer bidiagonal factors off
    with Givens rotations from both sides.
    """
    B = as_bd(B)
    n = _require_square(B, "reduce_to_upper_bidiagonal")
    if n == 1:
        return Bidiagonal(np.diagonal(B.grid).copy(), np.zeros(0))
    p = np.array(B.grid, dtype=np.float64)
    q, e = _reduction.bidiagonalize(p)
    return Bidiagonal(q, e)


def tn_singular_values(B: BdMatrix) -> Spectrum:
    """Singular values of the TN matrix represented by B"""
    spec = bidiagonal_sv(reduce_to_upper_bidiagonal(B))
    return spec.relabel(SpectrumKind.SINGULAR, "bd-reduction")


def tn_eigenvalues_sym(B: BdMatrix) -> Spectrum:
    """Eigenvalues of the symmetric TN matrix represented by a symmetric grid"""
    B = as_bd(B)
    _require_square(B, "tn_eigenvalues_sym")
    if not B.is_symmetric():
        raise NotSymmetricError("tn_eigenvalues_sym needs an exactly symmetric BD grid")
    return tn_singular_values(B).relabel(SpectrumKind.EIGEN)


def tridiag_eigenvalues_ldlt(T: TridiagLdlt) -> Spectrum:
    """Eigenvalues of L D L^T as squared singular values of (L D^(1/2))^T"""
    if not isinstance(T, TridiagLdlt):
        raise ValidationError(f"expected TridiagLdlt, got {type(T).__name__}")
    root = np.sqrt(T.d)
    spec = bidiagonal_sv(Bidiagonal(root, T.l * root[:-1]))
    return Spectrum(spec.values ** 2, SpectrumKind.EIGEN, "ldlt", spec.sweeps)


def cond2(B: BdMatrix) -> float:
    """Spectral condition number sigma_max / sigma_min"""
    return tn_singular_values(B).condition
