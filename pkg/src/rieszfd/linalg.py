"""Dense LU solver for the implicit step, backed by LAPACK.

The factorization uses partial (row) pivoting and is computed once per
simulation; only the right-hand side changes between steps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import get_lapack_funcs

from .errors import DimensionMismatch, SingularMatrix

PIVOT_FLOOR = 1e-300


@dataclass(frozen=True)
class LUFactorization:
    """PA = LU factors in LAPACK's packed layout; immutable and reusable."""

    lu: np.ndarray
    piv: np.ndarray
    n: int


def lu_factor(matrix: np.ndarray) -> LUFactorization:
    """Factor a square matrix with partial pivoting.

    Raises SingularMatrix when any pivot magnitude falls below 1e-300.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    getrf, = get_lapack_funcs(("getrf",), (a,))
    lu, piv, info = getrf(a)
    if info < 0:
        raise ValueError(f"illegal argument {-info} in LU factorization")
    if info > 0 or np.min(np.abs(np.diag(lu))) < PIVOT_FLOOR:
        raise SingularMatrix("pivot below 1e-300; matrix is singular to working precision")
    lu.setflags(write=False)
    piv.setflags(write=False)
    return LUFactorization(lu=lu, piv=piv, n=a.shape[0])


def lu_solve(fact: LUFactorization, rhs: np.ndarray) -> np.ndarray:
    """Solve A x = rhs using a previous factorization of A."""
    b = np.asarray(rhs, dtype=float)
    if b.shape != (fact.n,):
        raise DimensionMismatch(f"rhs has shape {b.shape}, expected ({fact.n},)")
    getrs, = get_lapack_funcs(("getrs",), (fact.lu,))
    x, info = getrs(fact.lu, fact.piv, b)
    if info != 0:
        raise ValueError(f"LAPACK getrs failed with info={info}")
    return x
