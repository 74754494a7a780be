"""Shared builders for tnla tests"""
import random
from fractions import Fraction

import numpy as np

from tnla.bd import BdMatrix
from tnla.generators import hilbert_bd, pascal_bd, random_tn_bd, vandermonde_bd

ULP = float(np.finfo(np.float64).eps)


def random_rational_grid(n: int, seed: int):
    """Grid of positive small-denominator rationals in [1/9, 9]"""
    rng = random.Random(seed)
    return [[Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n)] for _ in range(n)]


def random_rational_nodes(n: int, seed: int, lo: int = 0):
    """n distinct increasing rationals > lo with denominators up to 7"""
    rng = random.Random(seed)
    nodes = set()
    while len(nodes) < n:
        nodes.add(Fraction(lo) + Fraction(rng.randint(1, 40), rng.randint(1, 7)))
    return sorted(nodes)


def structured_fixtures(max_n: int = 8):
    """(name, BdMatrix) pairs covering every generator family"""
    out = []
    for n in range(2, max_n + 1):
        out.append((f"hilbert{n}", hilbert_bd(n)))
        out.append((f"pascal{n}", pascal_bd(n)))
        out.append((f"vandermonde{n}", vandermonde_bd(range(1, n + 1))))
        out.append((f"random{n}", random_tn_bd(n, seed=n)))
    return out


def rel_err(computed, reference) -> np.ndarray:
    """Componentwise relative error"""
    computed = np.asarray(computed, dtype=np.float64)
    reference = np.asarray([float(v) for v in np.ravel(reference)]).reshape(computed.shape)
    return np.abs(computed - reference) / np.abs(reference)


def as_grid(B: BdMatrix):
    return B.grid.tolist()
