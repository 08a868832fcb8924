import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

import jcm_entropy.entropy as entropy_mod
import jcm_entropy.model as model
from jcm_entropy import (
    AtomState,
    FieldSpec,
    ModelParams,
    closed_form_channel,
    compound_states,
    hermitian_eig,
    identity_check,
    mutual_entropy,
    mutual_entropy_closed_form,
    relative_entropy,
    schatten_decompose,
    von_neumann_entropy,
)
from jcm_entropy.errors import DegenerateSpectrum, DimensionMismatch, LengthMismatch, NotDensity
from jcm_entropy.linalg import kron

from conftest import random_density

S_RHO = -0.1 * math.log(0.1) - 0.9 * math.log(0.9)  # 0.3250829733914482


def test_s_rho_reference_value():
    assert abs(S_RHO - 0.325083) < 1e-6


# --- Schatten decomposition -------------------------------------------------


def test_schatten_diagonal():
    d = schatten_decompose(np.diag([0.1, 0.9]))
    np.testing.assert_allclose(d.eigenvalues, [0.9, 0.1])
    np.testing.assert_allclose(d.projections[0], np.diag([0, 1]), atol=1e-15)
    np.testing.assert_allclose(d.projections[1], np.diag([1, 0]), atol=1e-15)


def test_schatten_degenerate():
    with pytest.raises(DegenerateSpectrum):
        schatten_decompose(np.diag([0.5, 0.5]))


def test_schatten_reconstruction():
    rho = np.array([[0.6, 0.2], [0.2, 0.4]])
    d = schatten_decompose(rho)
    assert d.eigenvalues[0] > d.eigenvalues[1]
    assert abs(d.eigenvalues.sum() - 1) < 1e-12
    assert np.linalg.norm(d.reconstruct() - rho) < 1e-12
    p, q = d.projections
    assert np.linalg.norm(p @ q) < 1e-10
    assert np.linalg.norm(p @ p - p) < 1e-10


# --- von Neumann entropy ------------------------------------------------------


def test_vn_examples():
    assert von_neumann_entropy(np.diag([1.0, 0.0])) == 0
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(math.log(2), abs=1e-15)
    assert von_neumann_entropy(np.eye(2) / 2, "2") == pytest.approx(1.0, abs=1e-15)
    assert von_neumann_entropy(np.diag([0.1, 0.9])) == pytest.approx(S_RHO, abs=1e-15)
    assert abs(von_neumann_entropy(np.diag([0.1, 0.9])) - 0.325083) < 1e-6


def test_vn_bounds(rng):
    for n in (2, 4, 7):
        s = von_neumann_entropy(random_density(rng, n))
        assert 0 <= s <= math.log(n) + 1e-12


def test_vn_rejects_non_density():
    with pytest.raises(NotDensity):
        von_neumann_entropy(np.diag([2.0, -1.0]))


# --- relative entropy --------------------------------------------------------


def test_relative_entropy_examples(rng):
    rho = random_density(rng, 3)
    assert abs(relative_entropy(rho, rho)) < 1e-12
    assert relative_entropy(np.diag([1, 0]), np.eye(2) / 2) == pytest.approx(math.log(2), abs=1e-15)
    assert relative_entropy(np.diag([1, 0]), np.diag([0, 1])) == math.inf


def test_relative_entropy_support_inclusion_is_finite():
    # sigma supported inside tau's support, tau rank deficient
    assert relative_entropy(np.diag([1, 0, 0]), np.diag([0.5, 0.5, 0])) == pytest.approx(math.log(2))


@pytest.mark.parametrize("n", [2, 4])
def test_relative_entropy_matches_logm(rng, n):
    for _ in range(5):
        a, b = random_density(rng, n), random_density(rng, n)
        ref = np.trace(a @ (scipy.linalg.logm(a) - scipy.linalg.logm(b))).real
        assert relative_entropy(a, b) == pytest.approx(ref, abs=1e-10)
        assert relative_entropy(a, b, "2") == pytest.approx(ref / math.log(2), abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 4]), st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_klein_inequality(n, ra, rb, seed):
    rng = np.random.default_rng(seed)
    a = random_density(rng, n, min(ra, n))
    b = random_density(rng, n, min(rb, n))
    assert relative_entropy(a, b) >= -1e-12


def test_relative_entropy_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        relative_entropy(np.eye(2) / 2, np.eye(4) / 4)


# --- compound states ----------------------------------------------------------


def test_compound_identity_channel(rng):
    rho = random_density(rng, 2)
    d = schatten_decompose(rho)
    s_e, s_0 = compound_states(d, list(d.projections), rho)
    expected = sum(l * kron(p, p) for l, p in zip(d.eigenvalues, d.projections))
    assert np.linalg.norm(s_e.matrix - expected) < 1e-12
    assert relative_entropy(s_e, s_0) == pytest.approx(von_neumann_entropy(rho), abs=1e-10)


def test_compound_completely_mixing_channel(rng):
    rho = random_density(rng, 2)
    d = schatten_decompose(rho)
    s_e, s_0 = compound_states(d, [np.eye(2) / 2] * 2, np.eye(2) / 2)
    assert np.linalg.norm(s_e.matrix - kron(rho, np.eye(2) / 2)) < 1e-12
    assert abs(relative_entropy(s_e, s_0)) < 1e-12


def test_compound_marginals_at_t0(coh25):
    rho = np.diag([0.1, 0.9])
    d = schatten_decompose(rho)
    outs = [model.closed_form_channel_on(coh25, p, 0.0) for p in d.projections]
    s_e, _ = compound_states(d, outs, closed_form_channel(coh25, 0.1, 0.9, 0.0))
    first, second = s_e.marginals()
    assert np.abs(first - rho).max() < 1e-12
    assert np.abs(second - rho).max() < 1e-12


@pytest.mark.parametrize("t", [3.0, 31.4, 55.5])
def test_compound_marginals_and_spectrum(coh25, t):
    d = schatten_decompose(np.diag([0.1, 0.9]))
    outs = [model.closed_form_channel_on(coh25, p, t) for p in d.projections]
    out_rho = closed_form_channel(coh25, 0.1, 0.9, t)
    s_e, _ = compound_states(d, outs, out_rho)
    first, second = s_e.marginals()
    assert np.linalg.norm(first - np.diag([0.1, 0.9])) < 1e-10
    assert np.linalg.norm(second - out_rho.matrix) < 1e-10
    expected = np.sort(np.concatenate([l * np.linalg.eigvalsh(o.matrix) for l, o in zip(d.eigenvalues, outs)]))
    np.testing.assert_allclose(hermitian_eig(s_e.matrix).eigenvalues, expected, atol=1e-12)


def test_compound_length_mismatch():
    d = schatten_decompose(np.diag([0.1, 0.9]))
    with pytest.raises(LengthMismatch):
        compound_states(d, [np.eye(2) / 2], np.eye(2) / 2)


# --- mutual entropy ------------------------------------------------------------


@pytest.mark.parametrize("mode", ["closed_form", "compound"])
def test_mutual_entropy_at_zero(coh25, mode):
    assert mutual_entropy(coh25, 0.1, 0.9, 0.0, mode) == pytest.approx(S_RHO, abs=1e-10)


def test_mutual_entropy_exact_identity_for_finite_support():
    # a Fock field has no truncation, so the t = 0 value is exact
    p = ModelParams(1.0, FieldSpec.fock(3))
    assert mutual_entropy(p, 0.1, 0.9, 0.0) == pytest.approx(S_RHO, abs=1e-15)


@pytest.fixture
def half_sums(monkeypatch):
    half = model.TransitionSums(0.5, 0.5, 0.5, 0.5)
    monkeypatch.setattr(model, "transition_sums", lambda params, t: half)
    monkeypatch.setattr(entropy_mod, "transition_sums", lambda params, t: half)


@pytest.mark.parametrize("mode", ["closed_form", "compound"])
def test_mutual_entropy_with_half_sums_vanishes(coh25, half_sums, mode):
    assert abs(mutual_entropy(coh25, 0.1, 0.9, 7.0, mode)) < 1e-15
    lhs, rhs = identity_check(coh25, 0.1, 0.9, 7.0)
    assert abs(lhs) < 1e-15 and abs(rhs) < 1e-15


def test_mutual_entropy_degenerate(coh25):
    with pytest.raises(DegenerateSpectrum):
        mutual_entropy(coh25, 0.5, 0.5, 1.0)
    with pytest.raises(DegenerateSpectrum):
        identity_check(coh25, 0.5, 0.5, 1.0)


def test_mutual_entropy_log_base(coh25):
    nats = mutual_entropy(coh25, 0.1, 0.9, 2.0)
    bits = mutual_entropy(ModelParams(1.0, coh25.field, log_base="2"), 0.1, 0.9, 2.0)
    assert bits == pytest.approx(nats / math.log(2), rel=1e-14)


def test_mutual_entropy_pure_input_is_zero(coh25):
    # diag(0, 1): a single elementary event carries no information
    for mode in ("closed_form", "compound"):
        assert mutual_entropy(coh25, 0.0, 1.0, 4.2, mode) == pytest.approx(0.0, abs=1e-15)


def test_first_revival_is_a_lower_local_maximum(coh25):
    t = np.linspace(25, 38, 1301)
    i = mutual_entropy_closed_form(coh25, 0.1, 0.9, t)
    k = int(np.argmax(i))
    assert 0 < k < len(t) - 1
    assert i[k] < mutual_entropy(coh25, 0.1, 0.9, 0.0)


@pytest.mark.parametrize("lam0", [0.1, 0.3, 0.8])
def test_modes_identity_and_bounds_on_grid(coh25, lam0):
    grid = np.linspace(0, 65, 131)
    s_rho = von_neumann_entropy(np.diag([lam0, 1 - lam0]))
    closed = mutual_entropy_closed_form(coh25, lam0, 1 - lam0, grid)
    for t, c in zip(grid, closed):
        comp = mutual_entropy(coh25, lam0, 1 - lam0, t, "compound")
        lhs, rhs = identity_check(coh25, lam0, 1 - lam0, t)
        assert abs(c - comp) < 1e-10
        assert abs(lhs - rhs) < 1e-10
        assert -1e-12 <= c <= s_rho + 1e-10


@pytest.mark.parametrize("n", [0, 2])
def test_fock_field_modes_agree(n):
    params = ModelParams(0.9, FieldSpec.fock(n))
    for t in np.linspace(0, 6, 25):
        a = mutual_entropy(params, 0.25, 0.75, t)
        b = mutual_entropy(params, 0.25, 0.75, t, "compound")
        assert a == pytest.approx(b, abs=1e-10)


def test_identity_check_at_zero(coh25):
    lhs, rhs = identity_check(coh25, 0.1, 0.9, 0.0)
    assert lhs == pytest.approx(S_RHO, abs=1e-10)
    assert rhs == pytest.approx(S_RHO, abs=1e-10)
