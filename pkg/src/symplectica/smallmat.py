"""Brute-force linear-algebra oracles for small matrices.

These routines are deliberately independent of the closed-form kernels in
the optics modules: the closed forms are checked against them in the test
suite, so this module stays on plain LAPACK-backed numpy/scipy calls.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import SingularMatrixError

__all__ = [
    "det_oracle",
    "inv_oracle",
    "expm",
    "is_symplectic",
    "make_symplectic_from_symmetric",
]

#: default tolerance for symplecticity residuals
SYMPLECTIC_TOL = 1e-9

_MAX_ORDER = 6


def _check_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if m.shape[0] > _MAX_ORDER:
        raise ValueError(f"order {m.shape[0]} exceeds supported maximum {_MAX_ORDER}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def det_oracle(m) -> float:
    """LU determinant of a matrix of order <= 6."""
    return float(np.linalg.det(_check_square(m)))


def inv_oracle(m, tol: float = 1e-12) -> np.ndarray:
    """LU inverse; raises SingularMatrixError when |det| <= tol * scale."""
    m = _check_square(m)
    scale = max(1.0, np.abs(m).max()) ** m.shape[0]
    if abs(np.linalg.det(m)) <= tol * scale:
        raise SingularMatrixError("matrix is singular to working precision")
    return np.linalg.inv(m)


def expm(m) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring with Pade approximation)."""
    return scipy.linalg.expm(_check_square(m))


def is_symplectic(r, form, tol: float = SYMPLECTIC_TOL) -> bool:
    """True iff max|R form R^T - form| <= tol."""
    r = _check_square(r)
    form = _check_square(form)
    if r.shape != form.shape:
        raise ValueError("transformation and form must have the same order")
    return bool(np.abs(r @ form @ r.T - form).max() <= tol)


def make_symplectic_from_symmetric(s, form) -> np.ndarray:
    """exp(form @ S) for symmetric S: always symplectic w.r.t. the form.

    A symmetric matrix multiplied by the (antisymmetric) symplectic form
    is the logarithm of a symplectic map, so exponentiation lands in the
    symplectic group.
    """
    s = _check_square(s)
    if np.abs(s - s.T).max() > 1e-12 * max(1.0, np.abs(s).max()):
        raise ValueError("generator must be symmetric")
    return expm(np.asarray(form, dtype=float) @ s)
