import numpy as np
import pytest

from jcm_entropy import FieldSpec, ModelParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def coh25():
    """Coherent field |theta|^2 = 25, g = 1, tail 1e-12."""
    return ModelParams(1.0, FieldSpec.from_mean_photon(25.0), tail_epsilon=1e-12)


@pytest.fixture(scope="session")
def vacuum():
    return ModelParams(1.0, FieldSpec.fock(0))


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def random_density(rng, n, rank=None):
    rank = n if rank is None else rank
    a = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when == "call":
                name = nodeid.split("::")[-1][len("test_"):]
                lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines, key=lambda x: int(x[0].split("_")[1])):
            terminalreporter.write_line(f"{status}  {name}")
