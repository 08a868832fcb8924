"""Quantum mutual entropy of a two-level atom in the Jaynes-Cummings model."""

from .entropy import (
    CompoundState,
    SchattenDecomposition,
    compound_states,
    identity_check,
    mutual_entropy,
    mutual_entropy_closed_form,
    relative_entropy,
    schatten_decompose,
    von_neumann_entropy,
)
from .errors import (
    BadDistribution,
    CutoffTooSmall,
    DegenerateSpectrum,
    DimensionMismatch,
    JCMError,
    LengthMismatch,
    NotCoherentField,
    NotDensity,
    NotHermitian,
)
from .linalg import EigenSystem, hermitian_eig, kron, matrix_exp_series, partial_trace_field
from .model import (
    AtomState,
    FieldSpec,
    ModelParams,
    TransitionSums,
    atomic_inversion,
    dressed_unitary,
    fock_cutoff,
    closed_form_channel,
    poisson_weights,
    rabi,
    revival_times,
    transition_sums,
)
from .oracle import (
    JointState,
    build_interaction_hamiltonian,
    coherence_magnitude,
    coherent_vector,
    exact_channel,
    exact_mutual_entropy,
)
from .sweep import SweepConfig, run_sweep, run_validate

__version__ = "0.1.0"
