"""Closed-form Jaynes-Cummings channel for the atom.

Units: hbar = 1, the coupling ``g`` is an angular frequency and ``t`` is a
raw real.  Only the interaction Hamiltonian ``g (a sigma+ + a* sigma-)``
generates the dynamics; the free part commutes with it and drops out.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .errors import BadDistribution, NotCoherentField, NotDensity
from .linalg import TOL_LINALG, as_matrix, is_density

# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class FieldSpec:
    """Initial state of the field mode.

    ``kind`` is ``"coherent"`` (amplitude ``theta``, mean photon number
    ``|theta|**2``) or ``"fock"`` (exactly ``n`` photons).  When
    ``explicit_cutoff`` is set it replaces the automatically chosen Fock
    truncation.
    """

    kind: Literal["coherent", "fock"]
    theta: complex = 0.0
    n: int = 0
    explicit_cutoff: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("coherent", "fock"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "fock" and (int(self.n) != self.n or self.n < 0):
            raise ValueError("Fock number must be a non-negative integer")
        if self.explicit_cutoff is not None and self.explicit_cutoff < 1:
            raise ValueError("explicit_cutoff must be a positive integer")

    @classmethod
    def coherent(cls, theta: complex, explicit_cutoff: Optional[int] = None) -> "FieldSpec":
        return cls("coherent", theta=complex(theta), explicit_cutoff=explicit_cutoff)

    @classmethod
    def from_mean_photon(cls, mean: float, explicit_cutoff: Optional[int] = None) -> "FieldSpec":
        if mean < 0:
            raise ValueError("mean photon number must be >= 0")
        return cls.coherent(math.sqrt(mean), explicit_cutoff)

    @classmethod
    def fock(cls, n: int, explicit_cutoff: Optional[int] = None) -> "FieldSpec":
        return cls("fock", n=int(n), explicit_cutoff=explicit_cutoff)

    @property
    def mean_photon(self) -> float:
        if self.kind == "coherent":
            return abs(self.theta) ** 2
        return float(self.n)


@dataclass(frozen=True)
class ModelParams:
    g: float
    field: FieldSpec
    log_base: Literal["e", "2"] = "e"
    tail_epsilon: float = 1e-12
    tol_prob: float = 1e-10

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError("coupling g must be positive")
        if not 0 < self.tail_epsilon <= 1e-6:
            raise ValueError("tail_epsilon must lie in (0, 1e-6]")
        if not 0 < self.tol_prob <= 1e-6:
            raise ValueError("tol_prob must lie in (0, 1e-6]")
        if self.log_base not in ("e", "2"):
            raise ValueError("log_base must be 'e' or '2'")

    @property
    def cutoff(self) -> int:
        return fock_cutoff(self.field, self.tail_epsilon)


@dataclass(frozen=True, eq=False)
class AtomState:
    """2x2 density operator of the atom in the basis (|1> lower, |2> upper)."""

    matrix: np.ndarray
    tol: float = field(default=TOL_LINALG, repr=False)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (2, 2):
            raise NotDensity(f"atom state must be 2x2, got {m.shape}")
        if not is_density(m, self.tol):
            raise NotDensity("atom state is not a valid density operator")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def diagonal(cls, lambda0: float, lambda1: float, tol: float = TOL_LINALG) -> "AtomState":
        """``lambda0 |1><1| + lambda1 |2><2|``."""
        return cls(np.diag([lambda0, lambda1]).astype(np.complex128), tol)

    @property
    def p_lower(self) -> float:
        return float(self.matrix[0, 0].real)

    @property
    def p_upper(self) -> float:
        return float(self.matrix[1, 1].real)


E0 = np.diag([1.0, 0.0]).astype(np.complex128)  # |1><1|, lower level
E1 = np.diag([0.0, 1.0]).astype(np.complex128)  # |2><2|, upper level


@dataclass(frozen=True)
class TransitionSums:
    """Poisson-averaged survival/transition probabilities.

    ``c0``/``s0``: atom starting in the upper level stays / decays.
    ``c1``/``s1``: atom starting in the lower level stays / is excited.
    Fields are floats for scalar ``t`` and arrays for a time grid.
    """

    c0: float
    s0: float
    c1: float
    s1: float


# ---------------------------------------------------------------------------
# photon statistics


def _poisson_log_weights(mean: float, n_max: int) -> np.ndarray:
    if mean == 0.0:
        out = np.full(n_max + 1, -np.inf)
        out[0] = 0.0
        return out
    # log p_{n+1} = log p_n + log(mean) - log(n+1), p_0 = exp(-mean)
    steps = np.log(mean) - np.log(np.arange(1, n_max + 1))
    return -mean + np.concatenate(([0.0], np.cumsum(steps)))


def poisson_weights(theta: complex, N: int) -> np.ndarray:
    """Photon-number distribution ``p_0..p_N`` of the coherent state ``|theta>``."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return np.exp(_poisson_log_weights(abs(theta) ** 2, N))


@functools.lru_cache(maxsize=256)
def fock_cutoff(field: FieldSpec, tail_epsilon: float) -> int:
    """Largest photon number ``N`` kept in Poisson sums and dressed pairs.

    For a coherent field this is the smallest ``N`` whose discarded
    Poisson tail ``sum_{n>N} p_n`` is below ``tail_epsilon``; for a Fock
    state ``n`` it is ``n + 1``.  A field's ``explicit_cutoff`` is used
    verbatim when set.
    """
    if not 0 < tail_epsilon < 1:
        raise ValueError("tail_epsilon must lie in (0, 1)")
    if field.explicit_cutoff is not None:
        return int(field.explicit_cutoff)
    if field.kind == "fock":
        return field.n + 1
    mean = field.mean_photon
    if mean == 0.0:
        return 0
    # far enough out that the ignored remainder is < 1e-30
    n_max = int(mean + 20.0 * math.sqrt(mean) + 80)
    p = np.exp(_poisson_log_weights(mean, n_max))
    # tail[N] = sum_{n > N} p_n, summed from the small end
    tail = np.concatenate((np.cumsum(p[::-1])[::-1][1:], [0.0]))
    return int(np.argmax(tail < tail_epsilon))


def photon_weights(params: ModelParams, N: Optional[int] = None) -> np.ndarray:
    """Initial photon-number distribution ``p_0..p_N`` of the field."""
    if N is None:
        N = params.cutoff
    f = params.field
    if f.kind == "coherent":
        return poisson_weights(f.theta, N)
    p = np.zeros(N + 1)
    if f.n <= N:
        p[f.n] = 1.0
    return p


# ---------------------------------------------------------------------------
# closed-form dynamics


def rabi(g: float, n: int) -> float:
    """Rabi frequency ``g sqrt(n + 1)`` of the dressed pair (|2,n>, |1,n+1>)."""
    if not g > 0:
        raise ValueError("g must be positive")
    return g * math.sqrt(n + 1)


def transition_sums(params: ModelParams, t) -> TransitionSums:
    """Photon-averaged Rabi probabilities at time(s) ``t``.

    The upper level |2,n> oscillates at ``g sqrt(n+1)``; the lower level
    |1,n> oscillates at ``g sqrt(n)`` (|1,0> is stationary).
    """
    t_arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t_arr)):
        raise ValueError("t must be finite")
    p = photon_weights(params)
    n = np.arange(len(p))
    phase_up = params.g * np.sqrt(n + 1.0) * t_arr[..., None]
    phase_low = params.g * np.sqrt(n) * t_arr[..., None]
    c0 = np.cos(phase_up) ** 2 @ p
    s0 = np.sin(phase_up) ** 2 @ p
    c1 = np.cos(phase_low) ** 2 @ p
    s1 = np.sin(phase_low) ** 2 @ p
    if t_arr.ndim == 0:
        return TransitionSums(float(c0), float(s0), float(c1), float(s1))
    return TransitionSums(c0, s0, c1, s1)


def _check_distribution(lambda0: float, lambda1: float, tol: float) -> None:
    if lambda0 < -tol or lambda1 < -tol or abs(lambda0 + lambda1 - 1.0) > tol:
        raise BadDistribution(
            f"(lambda0, lambda1) = ({lambda0}, {lambda1}) is not a probability vector"
        )


def channel_populations(params: ModelParams, lambda0, lambda1, t):
    """Lower and upper populations of the closed-form channel output.

    Vectorised over ``t``; see :func:`closed_form_channel` for the state.
    """
    _check_distribution(lambda0, lambda1, params.tol_prob)
    ts = transition_sums(params, t)
    lower = lambda0 * ts.c1 + lambda1 * ts.s0
    upper = lambda0 * ts.s1 + lambda1 * ts.c0
    return lower, upper


def closed_form_channel(params: ModelParams, lambda0: float, lambda1: float, t: float) -> AtomState:
    """Closed-form channel applied to ``lambda0 E0 + lambda1 E1``.

    The output is diagonal::

        (lambda0 c1 + lambda1 s0) |1><1| + (lambda0 s1 + lambda1 c0) |2><2|
    """
    lower, upper = channel_populations(params, lambda0, lambda1, float(t))
    return AtomState(np.diag([lower, upper]).astype(np.complex128), params.tol_prob)


def closed_form_channel_on(params: ModelParams, state, t: float) -> AtomState:
    """Closed-form channel for an arbitrary atom state.

    Only the populations of ``state`` enter; the closed form sends every
    atomic coherence to zero.
    """
    m = state.matrix if isinstance(state, AtomState) else as_matrix(state)
    return closed_form_channel(params, float(m[0, 0].real), float(m[1, 1].real), t)


def atomic_inversion(params: ModelParams, lambda0, lambda1, t):
    """Upper minus lower population of the channel output, in [-1, 1]."""
    lower, upper = channel_populations(params, lambda0, lambda1, t)
    return upper - lower


def dressed_unitary(params: ModelParams, t: float, N: int) -> np.ndarray:
    """Propagator assembled from the dressed-state expansion.

    Acts on atom x field with field dimension ``N + 2`` (atom-major
    ordering).  Each pair ``(|2,n>, |1,n+1>)``, ``n = 0..N``, contributes
    ``sum_j exp(-i t (-1)^j Omega_n) |Phi_j><Phi_j|`` with dressed states
    ``|Phi_j> = (|2,n> + (-1)^j |1,n+1>) / sqrt 2``.  The two states left
    uncoupled on this space, ``|1,0>`` and ``|2,N+1>``, evolve trivially.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    d = N + 2
    u = np.zeros((2 * d, 2 * d), dtype=np.complex128)
    for n in range(N + 1):
        omega = rabi(params.g, n)
        for j in (0, 1):
            sign = (-1) ** j
            phi = np.zeros(2 * d, dtype=np.complex128)
            phi[d + n] = 1.0 / math.sqrt(2.0)          # |2, n>
            phi[n + 1] = sign / math.sqrt(2.0)         # |1, n+1>
            u += np.exp(-1j * t * sign * omega) * np.outer(phi, phi.conj())
    u[0, 0] = 1.0                # |1, 0>
    u[2 * d - 1, 2 * d - 1] = 1.0  # |2, N+1>
    return u


def revival_times(params: ModelParams, k_max: int) -> list[float]:
    """Approximate revival times ``k * 2 pi |theta| / g`` for ``k = 1..k_max``."""
    f = params.field
    if f.kind != "coherent" or abs(f.theta) == 0:
        raise NotCoherentField("revival times need a coherent field with theta != 0")
    t_r = 2.0 * math.pi * abs(f.theta) / params.g
    return [k * t_r for k in range(1, k_max + 1)]
