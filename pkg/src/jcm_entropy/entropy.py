"""Von Neumann entropy, relative entropy and the quantum mutual entropy.

The mutual entropy of the input ``rho = sum_k lambda_k E_k`` through a
channel ``L`` is the relative entropy between the compound state
``sigma_E = sum_k lambda_k E_k (x) L(E_k)`` and the product
``sigma_0 = rho (x) L(rho)``.  All quantities are in nats unless
``log_base="2"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from . import linalg
from .errors import DegenerateSpectrum, DimensionMismatch, LengthMismatch, NotDensity
from .linalg import TOL_LINALG
from .model import AtomState, E0, E1, ModelParams, closed_form_channel, closed_form_channel_on, transition_sums

DEGENERACY_TOL = 1e-9
SUPPORT_TOL = 1e-12

LogBase = Literal["e", "2"]


def _log_unit(log_base: LogBase) -> float:
    if log_base == "e":
        return 1.0
    if log_base == "2":
        return math.log(2.0)
    raise ValueError(f"log_base must be 'e' or '2', got {log_base!r}")


def _density(m, tol: float = TOL_LINALG) -> np.ndarray:
    if isinstance(m, (AtomState, CompoundState)):
        return m.matrix
    a = linalg.as_matrix(m)
    if not linalg.is_density(a, tol):
        raise NotDensity("argument is not a density operator")
    return a


@dataclass(frozen=True, eq=False)
class SchattenDecomposition:
    """Spectral decomposition ``rho = sum_k eigenvalues[k] projections[k]``.

    Eigenvalues are strictly descending; projections are rank one.
    """

    eigenvalues: np.ndarray
    projections: tuple

    def reconstruct(self) -> np.ndarray:
        return sum(lam * p for lam, p in zip(self.eigenvalues, self.projections))


@dataclass(frozen=True, eq=False)
class CompoundState:
    """Density operator on atom (x) atom."""

    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        if m.shape != (4, 4) or not linalg.is_density(m):
            raise NotDensity("compound state must be a 4x4 density operator")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def marginals(self) -> tuple[np.ndarray, np.ndarray]:
        """(input marginal, output marginal)."""
        return (
            linalg.partial_trace_second(self.matrix, (2, 2)),
            linalg.partial_trace_first(self.matrix, (2, 2)),
        )


def schatten_decompose(rho, degeneracy_tol: float = DEGENERACY_TOL) -> SchattenDecomposition:
    """Unique Schatten decomposition of a qubit state with distinct eigenvalues.

    Raises:
        DegenerateSpectrum: if the two eigenvalues differ by no more than
            ``degeneracy_tol``; the decomposition is then not unique.
    """
    m = _density(rho)
    eig = linalg.hermitian_eig(m)
    lam = eig.eigenvalues[::-1]
    vecs = eig.eigenvectors[:, ::-1]
    if np.any(np.diff(lam) >= -degeneracy_tol):
        raise DegenerateSpectrum(f"eigenvalues {lam} are (nearly) degenerate")
    projections = tuple(np.outer(vecs[:, k], vecs[:, k].conj()) for k in range(len(lam)))
    return SchattenDecomposition(lam.copy(), projections)


def von_neumann_entropy(rho, log_base: LogBase = "e") -> float:
    """``-tr rho log rho`` with ``0 log 0 = 0``."""
    m = _density(rho)
    lam = np.linalg.eigvalsh(m)
    lam = lam[lam > 0]
    s = -float(np.sum(lam * np.log(lam)))
    return max(s, 0.0) / _log_unit(log_base)


def relative_entropy(sigma, tau, log_base: LogBase = "e", support_tol: float = SUPPORT_TOL) -> float:
    """Quantum relative entropy ``tr sigma (log sigma - log tau)``.

    Returns ``inf`` when the support of ``sigma`` is not contained in the
    support of ``tau``.
    """
    a = _density(sigma)
    b = _density(tau)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    lam, u = np.linalg.eigh(a)
    mu, v = np.linalg.eigh(b)
    overlap = np.abs(u.conj().T @ v) ** 2  # overlap[i, j] = |<u_i|v_j>|^2

    live = lam > support_tol
    null = mu <= support_tol
    if np.any(overlap[np.ix_(live, null)] > support_tol):
        return math.inf

    pos = lam > 0
    first = float(np.sum(lam[pos] * np.log(lam[pos])))
    log_mu = np.where(null, 0.0, np.log(np.where(null, 1.0, mu)))
    second = float(lam[pos] @ overlap[pos] @ log_mu)
    return (first - second) / _log_unit(log_base)


def compound_states(
    decomp: SchattenDecomposition,
    channel_on_projections: Sequence,
    channel_on_rho,
) -> tuple[CompoundState, CompoundState]:
    """Build ``(sigma_E, sigma_0)`` from a decomposition and channel outputs."""
    if len(channel_on_projections) != len(decomp.projections):
        raise LengthMismatch(
            f"{len(channel_on_projections)} channel outputs for "
            f"{len(decomp.projections)} projections"
        )
    outs = [_density(s) for s in channel_on_projections]
    out_rho = _density(channel_on_rho)
    sigma_e = sum(
        lam * linalg.kron(p, o) for lam, p, o in zip(decomp.eigenvalues, decomp.projections, outs)
    )
    sigma_0 = linalg.kron(decomp.reconstruct(), out_rho)
    return CompoundState(sigma_e), CompoundState(sigma_0)


def _check_nondegenerate(lambda0: float, lambda1: float) -> None:
    if abs(lambda0 - lambda1) <= DEGENERACY_TOL:
        raise DegenerateSpectrum(
            "lambda0 == lambda1: the Schatten decomposition is not unique"
        )


def _xlogx_ratio(w, num, den):
    """``w * num * log(num / den)`` with zero-numerator terms set to 0."""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    ok = (num > 0) & (den > 0)
    safe = np.log(np.where(ok, num, 1.0) / np.where(ok, den, 1.0))
    return np.where(ok, w * num * safe, 0.0)


def _clip_rounding(value, tol):
    """Map rounding-level negatives in ``[-tol, 0)`` to zero; keep anything else."""
    return np.where((value < 0) & (value >= -tol), 0.0, value)


def mutual_entropy_closed_form(params: ModelParams, lambda0: float, lambda1: float, t):
    """Four-term closed form of the mutual entropy, vectorised over ``t``."""
    _check_nondegenerate(lambda0, lambda1)
    # validates (lambda0, lambda1)
    closed_form_channel(params, lambda0, lambda1, 0.0)
    ts = transition_sums(params, t)
    lower = lambda0 * ts.c1 + lambda1 * ts.s0
    upper = lambda0 * ts.s1 + lambda1 * ts.c0
    total = (
        _xlogx_ratio(lambda0, ts.c1, lower)
        + _xlogx_ratio(lambda0, ts.s1, upper)
        + _xlogx_ratio(lambda1, ts.s0, lower)
        + _xlogx_ratio(lambda1, ts.c0, upper)
    )
    total = _clip_rounding(total, params.tol_prob) / _log_unit(params.log_base)
    return float(total) if np.ndim(total) == 0 else total


def _compound_pair(params: ModelParams, lambda0: float, lambda1: float, t: float):
    rho = AtomState.diagonal(lambda0, lambda1, params.tol_prob)
    decomp = schatten_decompose(rho)
    outs = [closed_form_channel_on(params, p, t) for p in decomp.projections]
    out_rho = closed_form_channel(params, lambda0, lambda1, t)
    return compound_states(decomp, outs, out_rho)


def mutual_entropy(
    params: ModelParams,
    lambda0: float,
    lambda1: float,
    t: float,
    mode: Literal["closed_form", "compound"] = "closed_form",
) -> float:
    """Quantum mutual entropy ``I(rho; L_t)`` of ``rho = diag(lambda0, lambda1)``.

    ``mode="closed_form"`` evaluates the four-term expression in the
    transition sums; ``mode="compound"`` assembles ``sigma_E`` and
    ``sigma_0`` as 4x4 matrices and takes their relative entropy.
    """
    if mode == "closed_form":
        return float(mutual_entropy_closed_form(params, lambda0, lambda1, float(t)))
    if mode == "compound":
        _check_nondegenerate(lambda0, lambda1)
        sigma_e, sigma_0 = _compound_pair(params, lambda0, lambda1, t)
        return float(_clip_rounding(relative_entropy(sigma_e, sigma_0, params.log_base), params.tol_prob))
    raise ValueError(f"unknown mode {mode!r}")


def identity_check(params: ModelParams, lambda0: float, lambda1: float, t: float) -> tuple[float, float]:
    """Both sides of ``S(sigma_E, sigma_0) = sum_k lambda_k S(L E_k, L rho)``."""
    _check_nondegenerate(lambda0, lambda1)
    sigma_e, sigma_0 = _compound_pair(params, lambda0, lambda1, t)
    lhs = relative_entropy(sigma_e, sigma_0, params.log_base)
    out_rho = closed_form_channel(params, lambda0, lambda1, t)
    rhs = 0.0
    for lam, e in ((lambda0, E0), (lambda1, E1)):
        if lam > 0:
            rhs += lam * relative_entropy(closed_form_channel_on(params, e, t), out_rho, params.log_base)
    return lhs, rhs
