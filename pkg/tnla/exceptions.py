"""
Exceptions for the tnla library
"""


class TnlaError(Exception):
    """Base exception for all tnla errors"""
    pass


# === Argument validation ===

class ValidationError(TnlaError):
    """Invalid parameter or argument shape"""
    pass


class InvalidBdError(ValidationError):
    """A BD grid violates sign, positivity or finiteness constraints"""
    pass


class DimensionMismatchError(ValidationError):
    """Operand sizes do not agree"""
    pass


class NodesNotSortedError(ValidationError):
    """Node vector is not strictly increasing"""
    pass


class NegativeNodeError(ValidationError):
    """Vandermonde node below zero"""
    pass


class SingularPairError(ValidationError):
    """Some Cauchy denominator x_i + y_j is not positive"""
    pass


class DuplicateNodesError(ValidationError):
    """Two interpolation nodes coincide"""
    pass


class BadRangeError(ValidationError):
    """Random generator bounds do not satisfy 0 < lo <= hi"""
    pass


class NotSymmetricError(ValidationError):
    """A symmetric input was required"""
    pass


# === Domain failures ===

class DomainError(TnlaError):
    """Input lies outside the class of matrices the algorithm accepts"""
    pass


class NotTotallyNonnegativeError(DomainError):
    """Neville elimination needs a row exchange or produced a negative parameter"""
    pass


class SingularMatrixError(DomainError):
    """Exact elimination met a singular matrix"""
    pass


class SingularToWorkingPrecisionError(DomainError):
    """Conventional solver found the matrix numerically singular"""
    pass


class FloatRangeError(TnlaError):
    """A result left the normal binary64 range"""

    def __init__(self, message: str, kind: str = "overflow"):
        super().__init__(message)
        self.kind = kind


# === Iterative methods ===

class ConvergenceError(TnlaError):
    """An iterative method did not settle"""
    pass


class NoConvergenceError(ConvergenceError):
    """Bidiagonal sweep budget exhausted"""
    pass


class PrecisionNotReachedError(ConvergenceError):
    """High-precision spectrum did not stabilize after doubling"""
    pass


class ReductionFailureError(TnlaError):
    """A BD parameter went negative or non-finite during factor peeling"""
    pass


# === Front end ===

class UsageError(TnlaError):
    """Missing or conflicting command-line arguments"""
    pass


class ParseError(TnlaError):
    """Malformed matrix, BD or vector file"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GateFailureError(TnlaError):
    """One or more experiment acceptance gates failed"""

    def __init__(self, message: str, rows=None):
        super().__init__(message)
        self.rows = list(rows or [])
