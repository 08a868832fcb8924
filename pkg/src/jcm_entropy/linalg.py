"""Dense complex matrix primitives.

Operators are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Composite atom-field operators use the atom-major ordering
``index(a, n) = a * field_dim + n`` where ``a = 0`` is the lower level
``|1>`` and ``a = 1`` the upper level ``|2>``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NotHermitian

TOL_LINALG = 1e-10


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square complex128 array, or raise ``DimensionMismatch``."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def _scaled_tol(m: np.ndarray, tol: float) -> float:
    return tol * max(1.0, float(np.linalg.norm(m)))


def is_hermitian(m, tol: float = TOL_LINALG) -> bool:
    a = as_matrix(m)
    return bool(np.linalg.norm(a - a.conj().T) <= _scaled_tol(a, tol))


def is_unitary(m, tol: float = TOL_LINALG) -> bool:
    a = as_matrix(m)
    return bool(np.linalg.norm(a.conj().T @ a - np.eye(len(a))) <= tol)


def is_density(m, tol: float = TOL_LINALG) -> bool:
    """Hermitian, unit trace and positive semidefinite, all within ``tol``."""
    a = as_matrix(m)
    if not is_hermitian(a, tol):
        return False
    if abs(np.trace(a) - 1.0) > tol:
        return False
    return bool(np.linalg.eigvalsh(0.5 * (a + a.conj().T))[0] >= -tol)


class EigenSystem(NamedTuple):
    """Eigenvalues in ascending order and the matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(m, tol: float = TOL_LINALG) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Raises:
        NotHermitian: if ``m`` is not Hermitian within ``tol`` (relative to
            its Frobenius norm).
    """
    a = as_matrix(m)
    if not is_hermitian(a, tol):
        raise NotHermitian("matrix is not Hermitian")
    # symmetrise so rounding-level asymmetry cannot leak into the result
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    return EigenSystem(w, v)


def matrix_exp_series(m, scale: complex = 1.0) -> np.ndarray:
    """Compute ``exp(scale * m)`` by scaling and squaring a Taylor series.

    The argument is divided by ``2**s`` until its 1-norm is at most 0.5,
    the series is summed until the terms stop contributing at double
    precision, and the result is squared ``s`` times.
    """
    a = as_matrix(m) * scale
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix_exp_series: non-finite entries")
    dim = len(a)
    norm1 = float(np.abs(a).sum(axis=0).max()) if dim else 0.0
    s = 0
    if norm1 > 0.5:
        s = int(np.ceil(np.log2(norm1 / 0.5)))
    a = a / 2.0**s

    result = np.eye(dim, dtype=np.complex128)
    term = np.eye(dim, dtype=np.complex128)
    for k in range(1, 60):
        term = term @ a / k
        result += term
        if np.abs(term).max() <= np.finfo(float).eps * np.abs(result).max() * 1e-2:
            break
    for _ in range(s):
        result = result @ result
    return result


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace_field(m, field_dim: int) -> np.ndarray:
    """Trace out the field factor of an atom-field operator.

    Returns the 2x2 atom operator ``r[a, b] = sum_n m[(a, n), (b, n)]``.
    """
    a = as_matrix(m)
    if field_dim < 1 or len(a) != 2 * field_dim:
        raise DimensionMismatch(
            f"operator of dimension {len(a)} is not atom(2) x field({field_dim})"
        )
    return np.trace(a.reshape(2, field_dim, 2, field_dim), axis1=1, axis2=3)


def partial_trace_first(m, dims: tuple[int, int]) -> np.ndarray:
    """Trace out the first factor of a bipartite operator."""
    d1, d2 = dims
    a = as_matrix(m)
    if len(a) != d1 * d2:
        raise DimensionMismatch(f"dimension {len(a)} != {d1}*{d2}")
    return np.trace(a.reshape(d1, d2, d1, d2), axis1=0, axis2=2)


def partial_trace_second(m, dims: tuple[int, int]) -> np.ndarray:
    """Trace out the second factor of a bipartite operator."""
    d1, d2 = dims
    a = as_matrix(m)
    if len(a) != d1 * d2:
        raise DimensionMismatch(f"dimension {len(a)} != {d1}*{d2}")
    return np.trace(a.reshape(d1, d2, d1, d2), axis1=1, axis2=3)
