"""
pytest configuration for tnla tests
"""
import os

import pytest

from tnla.experiments import ALTERNATING_RHS, DURER_GRID, DURER_MATRIX, VANDERMONDE_2358_GRID


def pytest_addoption(parser):
    """Add command line options for tests"""
    parser.addoption(
        "--oracle-bits",
        action="store",
        default=os.environ.get("TNLA_ORACLE_BITS", ""),
        help="Working precision (bits) for high-precision spectra in tests"
    )


@pytest.fixture(autouse=True)
def _oracle_precision(request, monkeypatch):
    """Propagate --oracle-bits to the library through $TNLA_ORACLE_BITS"""
    bits = request.config.getoption("--oracle-bits")
    if bits:
        monkeypatch.setenv("TNLA_ORACLE_BITS", str(bits))


@pytest.fixture(scope="session")
def durer_grid():
    return [list(r) for r in DURER_GRID]


@pytest.fixture(scope="session")
def durer_matrix():
    return [list(r) for r in DURER_MATRIX]


@pytest.fixture(scope="session")
def vandermonde_2358_grid():
    return [list(r) for r in VANDERMONDE_2358_GRID]


@pytest.fixture(scope="session")
def alternating_rhs():
    """Exact right-hand side (1/21, -1/21, 1/23, -1/23, 1/29, -1/29, 1/31)"""
    return list(ALTERNATING_RHS)

