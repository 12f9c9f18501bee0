"""Dense real linear algebra at workbench scale (matrix order <= ~512).

Thin contracts over LAPACK: linear solves go through an LU factorization
with partial pivoting so that numerically rank-deficient systems are
rejected by an explicit pivot threshold, and symmetric eigendecomposition
returns eigenvalues in non-decreasing order with orthonormal vectors.
Matrices are plain float64 ``numpy.ndarray`` values.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

PIVOT_TOL = 1e-12
SYMMETRY_TOL = 1e-12


class SingularMatrixError(ValueError):
    """Coefficient matrix is singular or numerically rank-deficient."""


def solve_linear(a: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = rhs`` for square ``a``.

    Raises :class:`SingularMatrixError` when any pivot of the
    partially-pivoted LU factorization falls below ``PIVOT_TOL``.
    """
    a = np.asarray(a, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"coefficient matrix must be square, got shape {a.shape}")
    if rhs.shape[0] != a.shape[0]:
        raise ValueError(
            f"rhs has {rhs.shape[0]} rows, expected {a.shape[0]}"
        )
    with warnings.catch_warnings():
        # The pivot check below turns exact singularity into an exception;
        # scipy's warning about it is redundant noise.
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a)
    pivots = np.abs(np.diag(lu))
    if pivots.min(initial=np.inf) < PIVOT_TOL:
        raise SingularMatrixError(
            f"pivot {pivots.min():.3e} below {PIVOT_TOL:.0e} after partial pivoting"
        )
    return lu_solve((lu, piv), rhs)


def invert(a: np.ndarray) -> np.ndarray:
    """Matrix inverse via :func:`solve_linear` against the identity."""
    a = np.asarray(a, dtype=float)
    return solve_linear(a, np.eye(a.shape[0]))


def sym_eigen(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as orthonormal columns, so ``a == V @ diag(w) @ V.T`` up
    to roundoff. Input asymmetric beyond ``SYMMETRY_TOL`` is rejected.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.T)) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric within tolerance")
    w, v = np.linalg.eigh(a)
    return w, v
