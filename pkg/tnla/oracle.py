"""
Reference engines: exact rational linear algebra and high-precision spectra

Rational results use fractions.Fraction and carry no rounding error at all.
Spectra use mpmath in a private context per call, so the precision is never
shared global state; the default precision comes from TNLA_ORACLE_BITS.

Only meant for small orders (n <= 12); nothing here is tuned for speed.
"""
from __future__ import annotations

import logging
import os
from fractions import Fraction
from math import comb
from typing import Any, List, Optional, Sequence

import mpmath

from .bd import BdMatrix, neville_grid
from .exceptions import (
    DimensionMismatchError,
    NotSymmetricError,
    PrecisionNotReachedError,
    SingularMatrixError,
    ValidationError,
)

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_BITS = 256
MIN_ORACLE_BITS = 128
AGREEMENT_DIGITS = 30

SPECTRUM_KINDS = ("eigen-sym", "singular")

RationalMatrix = List[List[Fraction]]


def oracle_bits() -> int:
    """Working precision for hp_spectrum from $TNLA_ORACLE_BITS"""
    raw = os.environ.get("TNLA_ORACLE_BITS")
    if raw is None or raw.strip() == "":
        return DEFAULT_ORACLE_BITS
    try:
        bits = int(raw)
    except ValueError:
        logger.warning(f"TNLA_ORACLE_BITS={raw!r} is not an integer, using {DEFAULT_ORACLE_BITS}")
        return DEFAULT_ORACLE_BITS
    if bits < MIN_ORACLE_BITS:
        logger.warning(f"TNLA_ORACLE_BITS={bits} below {MIN_ORACLE_BITS}, using {DEFAULT_ORACLE_BITS}")
        return DEFAULT_ORACLE_BITS
    return bits


def to_fraction(v: Any) -> Fraction:
    """Exact rational value of an int, float, Fraction or 'p/q' string"""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


def rational_matrix(A: Any) -> RationalMatrix:
    """Exact copy of a matrix-like (floats convert without rounding)"""
    rows = [[to_fraction(v) for v in row] for row in (A.tolist() if hasattr(A, "tolist") else A)]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatchError("matrix rows have unequal lengths")
    return rows


def _square(A: RationalMatrix, what: str) -> int:
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionMismatchError(f"{what} needs a square matrix")
    return n


# ---------------------------------------------------------------------------
# Rational builders
# ---------------------------------------------------------------------------

def rational_hilbert(n: int) -> RationalMatrix:
    return [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)]


def rational_pascal(n: int) -> RationalMatrix:
    return [[Fraction(comb(i + j, i)) for j in range(n)] for i in range(n)]


def rational_vandermonde(x: Sequence[Any], cols: Optional[int] = None) -> RationalMatrix:
    """V[i][j] = x_i ** j"""
    xs = [to_fraction(v) for v in x]
    cols = len(xs) if cols is None else cols
    return [[xi ** j for j in range(cols)] for xi in xs]


def rational_cauchy(x: Sequence[Any], y: Sequence[Any]) -> RationalMatrix:
    return [[1 / (to_fraction(a) + to_fraction(b)) for b in y] for a in x]


def exact_expand(B: Any) -> RationalMatrix:
    """Dense matrix of a square BD grid, in exact rationals"""
    grid = B.grid.tolist() if isinstance(B, BdMatrix) else B
    p = rational_matrix(grid)
    n = _square(p, "exact_expand")
    A = [[p[i][i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(1, n):
        for j in range(n - 1, 0, -1):
            u = p[j - k][j] if j >= k else 0
            if u:
                for i in range(n):
                    A[i][j] += u * A[i][j - 1]
    for k in range(1, n):
        for i in range(n - 1, 0, -1):
            l = p[i][i - k] if i >= k else 0
            if l:
                A[i] = [a + l * b for a, b in zip(A[i], A[i - 1])]
    return A


def matmul(A: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]


def transpose(A: RationalMatrix) -> RationalMatrix:
    return [list(col) for col in zip(*A)]


# ---------------------------------------------------------------------------
# Exact elimination
# ---------------------------------------------------------------------------

def exact_neville_bd(A: Any) -> RationalMatrix:
    """BD grid of a square rational matrix, without rounding"""
    A = rational_matrix(A)
    _square(A, "exact_neville_bd")
    return neville_grid(A)


def _gauss_jordan(A: RationalMatrix, rhs: RationalMatrix) -> RationalMatrix:
    """Solve A X = rhs exactly; rhs is n x k"""
    n = _square(A, "exact elimination")
    if len(rhs) != n:
        raise DimensionMismatchError(f"right-hand side has {len(rhs)} rows, expected {n}")
    M = [list(A[i]) + list(rhs[i]) for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {c})")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def exact_solve(A: Any, b: Sequence[Any]) -> List[Fraction]:
    """Exact solution of A x = b"""
    A = rational_matrix(A)
    X = _gauss_jordan(A, [[to_fraction(v)] for v in b])
    return [row[0] for row in X]


def exact_inverse(A: Any) -> RationalMatrix:
    """Exact inverse of a nonsingular square matrix"""
    A = rational_matrix(A)
    n = _square(A, "exact_inverse")
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return _gauss_jordan(A, eye)


def exact_determinant(A: Any) -> Fraction:
    A = rational_matrix(A)
    n = _square(A, "exact_determinant")
    M = [list(r) for r in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def exact_normal_solve(A: Any, b: Sequence[Any]) -> List[Fraction]:
    """Least-squares solution from the normal equations A^T A x = A^T b"""
    A = rational_matrix(A)
    At = transpose(A)
    rhs = [sum((a * to_fraction(v) for a, v in zip(row, b)), Fraction(0)) for row in At]
    return exact_solve(matmul(At, A), rhs)


# ---------------------------------------------------------------------------
# High-precision spectra
# ---------------------------------------------------------------------------

def _spectrum_at(rows: RationalMatrix, kind: str, bits: int) -> list:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    M = ctx.matrix([[ctx.mpf(v.numerator) / ctx.mpf(v.denominator) for v in row] for row in rows])
    if kind == "eigen-sym":
        E = ctx.eigsy(M, eigvals_only=True)
    else:
        E = ctx.svd_r(M, compute_uv=False)
    vals = sorted((E[i] for i in range(E.rows)), reverse=True)
    return vals


def _agree(a: list, b: list, digits: int, bits: int) -> bool:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    tol = ctx.mpf(10) ** (-digits)
    for u, v in zip(a, b):
        u, v = ctx.mpf(u), ctx.mpf(v)
        if u == v:
            continue
        if abs(u - v) > max(abs(u), abs(v)) * tol:
            return False
    return True


def hp_spectrum(A: Any, kind: str, precision: Optional[int] = None) -> list:
    """
    Eigenvalues (kind "eigen-sym") or singular values ("singular") in
    descending order, as mpmath numbers carrying at least 30 correct digits.

    Computed at `precision` bits and again at twice that; when the runs
    disagree the precision is doubled, at most twice.
    """
    if kind not in SPECTRUM_KINDS:
        raise ValidationError(f"kind must be one of {SPECTRUM_KINDS}, got {kind!r}")
    rows = rational_matrix(A)
    if kind == "eigen-sym":
        n = _square(rows, "hp_spectrum")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
            raise NotSymmetricError("eigen-sym spectrum needs a symmetric matrix")
    bits = precision if precision is not None else oracle_bits()
    if bits < MIN_ORACLE_BITS:
        raise ValidationError(f"precision must be at least {MIN_ORACLE_BITS} bits, got {bits}")
    prev = _spectrum_at(rows, kind, bits)
    for _ in range(2):
        cur = _spectrum_at(rows, kind, 2 * bits)
        if _agree(prev, cur, AGREEMENT_DIGITS, 2 * bits):
            logger.debug(f"hp_spectrum: {kind} stable at {bits}/{2 * bits} bits")
            return cur
        logger.warning(f"hp_spectrum: {kind} unstable at {bits}/{2 * bits} bits, doubling")
        bits *= 2
        prev = cur
    raise PrecisionNotReachedError(f"hp_spectrum: {kind} did not stabilize up to {bits} bits")


def relative_error(computed: Any, reference: Any) -> float:
    """|computed - reference| / |reference| evaluated at oracle precision"""
    ctx = mpmath.MPContext()
    ctx.prec = 2 * DEFAULT_ORACLE_BITS
    ref = _mp(ctx, reference)
    if ref == 0:
        raise ValidationError("relative error against a zero reference")
    return float(abs(_mp(ctx, computed) - ref) / abs(ref))


def relative_norm_error(computed: Sequence[Any], reference: Sequence[Any]) -> float:
    """Euclidean ||computed - reference|| / ||reference||"""
    ctx = mpmath.MPContext()
    ctx.prec = 2 * DEFAULT_ORACLE_BITS
    diff = ctx.fsum((_mp(ctx, c) - _mp(ctx, r)) ** 2 for c, r in zip(computed, reference))
    ref = ctx.fsum(_mp(ctx, r) ** 2 for r in reference)
    return float(ctx.sqrt(diff / ref))


def spectral_norm_error(computed: Any, reference: RationalMatrix) -> float:
    """||computed - reference||_2 / ||reference||_2"""
    C = rational_matrix(computed)
    diff = [[c - r for c, r in zip(crow, rrow)] for crow, rrow in zip(C, reference)]
    num = _spectrum_at(diff, "singular", DEFAULT_ORACLE_BITS)[0]
    den = _spectrum_at(reference, "singular", DEFAULT_ORACLE_BITS)[0]
    return float(num / den)


def _mp(ctx, v: Any):
    if isinstance(v, (Fraction, int)):
        v = Fraction(v)
        return ctx.mpf(v.numerator) / ctx.mpf(v.denominator)
    if isinstance(v, float):
        return ctx.mpf(v)
    return ctx.mpf(v)
