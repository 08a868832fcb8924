"""Brute-force evolution of the atom-field system.

The interaction Hamiltonian is assembled as a dense matrix on the
truncated space atom (x) field, with field dimension ``N + 2`` so that
every coupled pair ``(|2,n>, |1,n+1>)``, ``n <= N``, is represented.
The joint state ``U (rho (x) |w><w|) U*`` is reduced by a partial trace
over the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from . import linalg
from .entropy import compound_states, relative_entropy, schatten_decompose
from .errors import CutoffTooSmall, NotDensity
from .model import AtomState, FieldSpec, ModelParams, _poisson_log_weights, dressed_unitary

Exponentiator = Literal["series", "dressed"]


@dataclass(frozen=True, eq=False)
class JointState:
    """Density operator on atom (x) field (atom-major ordering)."""

    matrix: np.ndarray
    field_dim: int

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        if len(m) != 2 * self.field_dim:
            raise NotDensity(f"joint state dimension {len(m)} != 2*{self.field_dim}")
        if not linalg.is_density(m, 1e-9):
            raise NotDensity("joint state is not a density operator")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def field_populations(self) -> np.ndarray:
        """Photon-number distribution of the field marginal."""
        diag = np.real(np.diag(self.matrix)).reshape(2, self.field_dim)
        return diag.sum(axis=0)

    def edge_leakage(self, first_level: Optional[int] = None) -> float:
        """Field population at and above ``first_level``.

        Defaults to the two highest represented levels.
        """
        if first_level is None:
            first_level = self.field_dim - 2
        return float(self.field_populations()[first_level:].sum())


def oracle_cutoff(params: ModelParams) -> int:
    return max(params.cutoff, 1)


def edge_level(field: FieldSpec, N: int) -> int:
    """Lowest field level whose population counts as truncation leakage.

    A coherent field has Poisson weight up to the cutoff, so the top two
    levels ``N`` and ``N + 1`` are the edge.  A Fock state ``n`` only ever
    reaches levels ``n - 1 .. n + 1``; anything from ``n + 2`` up is leakage.
    """
    if field.kind == "fock":
        return min(field.n + 2, N + 1)
    return N


def build_interaction_hamiltonian(g: float, N: int) -> np.ndarray:
    """``g (a (x) sigma+ + a* (x) sigma-)`` on field dimension ``N + 2``.

    Only ``<2,n|H|1,n+1> = <1,n+1|H|2,n> = g sqrt(n+1)``, ``n = 0..N``,
    are nonzero.
    """
    if not g > 0:
        raise ValueError("g must be positive")
    if N < 1:
        raise ValueError("N must be >= 1")
    d = N + 2
    h = np.zeros((2 * d, 2 * d), dtype=np.complex128)
    for n in range(N + 1):
        h[d + n, n + 1] = h[n + 1, d + n] = g * math.sqrt(n + 1)
    return h


def field_vector(field: FieldSpec, N: int) -> tuple[np.ndarray, float]:
    """Truncated field ket on levels ``0..N+1`` and its discarded norm.

    Returns ``(vector, deficit)`` where ``deficit = 1 - ||vector||**2``
    before renormalisation; the returned vector has unit norm.
    """
    d = N + 2
    if field.kind == "fock":
        vec = np.zeros(d, dtype=np.complex128)
        if field.n >= d:
            return vec, 1.0
        vec[field.n] = 1.0
        return vec, 0.0
    theta = field.theta
    logp = _poisson_log_weights(abs(theta) ** 2, d - 1)
    phase = np.exp(1j * np.angle(theta) * np.arange(d)) if theta != 0 else np.ones(d)
    vec = np.exp(0.5 * logp) * phase
    norm2 = float(np.sum(np.abs(vec) ** 2))
    deficit = max(1.0 - norm2, 0.0)
    return vec / math.sqrt(norm2), deficit


def coherent_vector(field: FieldSpec, N: int, tail_epsilon: float = 1e-12) -> np.ndarray:
    """Unit-norm field ket of length ``N + 2`` for ``field``.

    Raises:
        CutoffTooSmall: if the truncation discards ``tail_epsilon`` or more
            of the norm.
    """
    vec, deficit = field_vector(field, N)
    if deficit >= tail_epsilon or not np.any(vec):
        raise CutoffTooSmall(
            f"truncation at N={N} discards {deficit:.3g} >= {tail_epsilon:.3g}"
        )
    return vec


def propagator(params: ModelParams, t: float, N: int, exponentiator: Exponentiator = "series") -> np.ndarray:
    if exponentiator == "series":
        return linalg.matrix_exp_series(build_interaction_hamiltonian(params.g, N), -1j * t)
    if exponentiator == "dressed":
        return dressed_unitary(params, t, N)
    raise ValueError(f"unknown exponentiator {exponentiator!r}")


def evolve(rho, field_ket: np.ndarray, u: np.ndarray) -> JointState:
    """``U (rho (x) |w><w|) U*``."""
    r = rho.matrix if isinstance(rho, AtomState) else linalg.as_matrix(rho)
    omega = np.outer(field_ket, field_ket.conj())
    joint = u @ linalg.kron(r, omega) @ u.conj().T
    return JointState(joint, len(field_ket))


def exact_channel(
    params: ModelParams,
    rho,
    t: float,
    exponentiator: Exponentiator = "series",
    N: Optional[int] = None,
) -> tuple[AtomState, JointState]:
    """Exact reduced atom state after time ``t`` and the joint state it came from."""
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    if N is None:
        N = oracle_cutoff(params)
    ket = coherent_vector(params.field, N, params.tail_epsilon)
    joint = evolve(rho, ket, propagator(params, t, N, exponentiator))
    reduced = linalg.partial_trace_field(joint.matrix, joint.field_dim)
    return AtomState(reduced, 1e-9), joint


def coherence_magnitude(params: ModelParams, rho, t: float) -> float:
    """``|<1|L_t(rho)|2>|`` for the exact channel."""
    reduced, _ = exact_channel(params, rho, t)
    return float(abs(reduced.matrix[0, 1]))


def exact_mutual_entropy(params: ModelParams, lambda0: float, lambda1: float, t: float) -> float:
    """Mutual entropy with the brute-force channel in place of the closed form.

    Kept for comparison: the exact outputs carry atomic coherences that the
    closed form drops.
    """
    rho = AtomState.diagonal(lambda0, lambda1, params.tol_prob)
    decomp = schatten_decompose(rho)
    N = oracle_cutoff(params)
    ket = coherent_vector(params.field, N, params.tail_epsilon)
    u = propagator(params, t, N)
    outs = [
        linalg.partial_trace_field(evolve(p, ket, u).matrix, N + 2) for p in decomp.projections
    ]
    out_rho = sum(lam * o for lam, o in zip(decomp.eigenvalues, outs))
    sigma_e, sigma_0 = compound_states(decomp, outs, out_rho)
    return relative_entropy(sigma_e, sigma_0, params.log_base)
