"""Time sweeps and oracle validation runs.

:func:`run_sweep` tabulates the closed-form channel and its mutual entropy
on a time grid; :func:`run_validate` cross-checks the closed form against
the brute-force evolution.  Both return plain data objects that serialise
to CSV or JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .entropy import identity_check, mutual_entropy_closed_form, von_neumann_entropy
from .errors import JCMError, NotCoherentField
from .model import AtomState, ModelParams, channel_populations, photon_weights, revival_times
from .oracle import (
    build_interaction_hamiltonian,
    edge_level,
    evolve,
    exact_channel,
    field_vector,
    oracle_cutoff,
    propagator,
)
from . import linalg

OUTPUTS = ("mutual_entropy", "von_neumann", "inversion", "populations", "coherence", "revival_markers")

# output name -> columns, in emission order
_COLUMNS = {
    "mutual_entropy": ("I_mutual",),
    "von_neumann": ("S_vn_atom",),
    "inversion": ("inversion",),
    "populations": ("p_lower", "p_upper"),
    "coherence": ("coherence_abs",),
    "revival_markers": ("revival_marker",),
}

# validation thresholds
DIAG_TOL = 1e-9
UNITARY_TOL = 1e-9
CROSS_TOL = 1e-8
IDENTITY_TOL = 1e-10


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _round12(x):
    if isinstance(x, float) and math.isfinite(x):
        return float(fmt(x))
    return x


@dataclass(frozen=True)
class SweepConfig:
    params: ModelParams
    lambda0: float
    t_start: float
    t_end: float
    steps: int
    outputs: tuple = ("mutual_entropy",)
    format: Literal["csv", "json"] = "csv"

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ValueError("t_start must be < t_end")
        if self.steps < 2:
            raise ValueError("steps must be >= 2")
        if not 0.0 <= self.lambda0 <= 1.0:
            raise ValueError("lambda0 must lie in [0, 1]")
        unknown = set(self.outputs) - set(OUTPUTS)
        if unknown or not self.outputs:
            raise ValueError(f"unknown outputs {sorted(unknown)}; choose from {OUTPUTS}")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be 'csv' or 'json'")

    @property
    def lambda1(self) -> float:
        return 1.0 - self.lambda0

    def columns(self) -> list[str]:
        cols = ["t"]
        for name in OUTPUTS:
            if name in self.outputs:
                cols.extend(_COLUMNS[name])
        return cols


def describe_params(params: ModelParams) -> dict:
    f = params.field
    d = {"g": params.g, "field": f.kind}
    if f.kind == "coherent":
        d["mean_photon"] = f.mean_photon
    else:
        d["fock_n"] = f.n
    d.update(
        cutoff=params.cutoff,
        tail_epsilon=params.tail_epsilon,
        entropy_unit="nats" if params.log_base == "e" else "bits",
    )
    return d


@dataclass
class Table:
    """Rows of floats with a named header and a parameter block."""

    columns: list
    rows: list
    meta: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([r[k] for r in self.rows], dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key, value in self.meta.items():
            buf.write(f"# {key}: {value}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([fmt(x) for x in r])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "parameters": self.meta,
            "columns": self.columns,
            "rows": [[_round12(float(x)) for x in r] for r in self.rows],
        }
        return json.dumps(payload, indent=1) + "\n"

    def render(self, format: str) -> str:
        return self.to_csv() if format == "csv" else self.to_json()


def run_sweep(config: SweepConfig) -> Table:
    """Tabulate the requested quantities on ``steps`` equally spaced times.

    With ``revival_markers`` the revival times inside the window are
    inserted as extra rows whose ``revival_marker`` column holds ``k``;
    ordinary grid rows carry 0.
    """
    p = config.params
    lam0, lam1 = config.lambda0, config.lambda1
    ts = np.linspace(config.t_start, config.t_end, config.steps)
    markers = np.zeros(len(ts))
    if "revival_markers" in config.outputs:
        f = p.field
        if f.kind != "coherent" or f.theta == 0:
            raise NotCoherentField("revival markers need a coherent field with nonzero amplitude")
        t_r = revival_times(p, 1)[0]
        k_max = int(config.t_end // t_r)
        rev = [t for t in revival_times(p, k_max) if t >= config.t_start] if k_max else []
        ks = [round(t / t_r) for t in rev]
        ts = np.concatenate((ts, rev))
        markers = np.concatenate((markers, ks))
        order = np.argsort(ts, kind="stable")
        ts, markers = ts[order], markers[order]

    data = {"t": ts}
    lower, upper = channel_populations(p, lam0, lam1, ts)
    if "mutual_entropy" in config.outputs:
        data["I_mutual"] = mutual_entropy_closed_form(p, lam0, lam1, ts)
    if "von_neumann" in config.outputs:
        data["S_vn_atom"] = np.array(
            [von_neumann_entropy(np.diag([lo, up]), p.log_base) for lo, up in zip(lower, upper)]
        )
    if "inversion" in config.outputs:
        data["inversion"] = upper - lower
    if "populations" in config.outputs:
        data["p_lower"], data["p_upper"] = lower, upper
    if "coherence" in config.outputs:
        rho = AtomState.diagonal(lam0, lam1, p.tol_prob)
        data["coherence_abs"] = np.array(
            [abs(exact_channel(p, rho, t)[0].matrix[0, 1]) for t in ts]
        )
    if "revival_markers" in config.outputs:
        data["revival_marker"] = markers

    cols = config.columns()
    rows = [[float(data[c][i]) for c in cols] for i in range(len(ts))]
    meta = describe_params(p)
    meta.update(lambda0=lam0, lambda1=lam1, t_start=config.t_start, t_end=config.t_end, steps=config.steps)
    return Table(cols, rows, meta)


@dataclass
class ValidationReport:
    table: Table
    passed: bool
    failures: list

    def summary(self) -> str:
        lines = []
        for name in self.table.columns[1:]:
            worst = float(np.max(self.table.column(name)))
            lines.append(f"max {name}: {worst:.3e}")
        lines.append("PASS" if self.passed else "FAIL: " + "; ".join(self.failures))
        return "\n".join(lines)


def run_validate(params: ModelParams, lambda0: float, t_grid: Sequence[float]) -> ValidationReport:
    """Compare the closed-form channel with exact evolution on ``t_grid``.

    Per time point the report holds: the largest population mismatch, the
    unitarity residual of the series propagator, the operator-norm
    distance between series and dressed propagators, the residual of the
    relative-entropy identity, the exact atomic coherence, the edge
    leakage of the joint state and the truncation deficit.  The run passes
    when every residual is under its threshold; coherence is reported only.
    """
    lam0, lam1 = lambda0, 1.0 - lambda0
    N = oracle_cutoff(params)
    ket, field_deficit = field_vector(params.field, N)
    deficit = max(field_deficit, 1.0 - float(photon_weights(params).sum()))
    rho = AtomState.diagonal(lam0, lam1, params.tol_prob)
    h = build_interaction_hamiltonian(params.g, N)
    eye = np.eye(len(h))
    degenerate = abs(lam0 - lam1) <= 1e-9
    edge = edge_level(params.field, N)

    cols = ["t", "diag_dev", "unitarity", "cross_norm", "identity_residual",
            "coherence_abs", "edge_leakage", "truncation_deficit"]
    rows = []
    for t in t_grid:
        t = float(t)
        u = linalg.matrix_exp_series(h, -1j * t)
        ud = propagator(params, t, N, "dressed")
        joint = evolve(rho, ket, u)
        reduced = linalg.partial_trace_field(joint.matrix, N + 2)
        lower, upper = channel_populations(params, lam0, lam1, t)
        diag_dev = max(abs(reduced[0, 0].real - lower), abs(reduced[1, 1].real - upper))
        if degenerate:
            ident = 0.0
        else:
            try:
                lhs, rhs = identity_check(params, lam0, lam1, t)
                ident = abs(lhs - rhs)
            except JCMError:
                # truncated populations no longer form a state
                ident = math.inf
        rows.append([
            t,
            diag_dev,
            float(np.linalg.norm(u.conj().T @ u - eye)),
            float(np.linalg.norm(u - ud, 2)),
            ident,
            float(abs(reduced[0, 1])),
            joint.edge_leakage(edge),
            deficit,
        ])
    table = Table(cols, rows, describe_params(params) | {"lambda0": lam0, "lambda1": lam1})

    checks = [
        ("diag_dev", DIAG_TOL),
        ("unitarity", UNITARY_TOL),
        ("cross_norm", CROSS_TOL),
        ("identity_residual", IDENTITY_TOL),
        ("edge_leakage", 10 * params.tail_epsilon),
    ]
    failures = []
    if deficit >= params.tail_epsilon:
        failures.append(f"truncation deficit {deficit:.3e} >= {params.tail_epsilon:.1e}")
    for name, tol in checks:
        worst = float(np.max(table.column(name))) if rows else 0.0
        if not worst < tol:
            failures.append(f"{name} {worst:.3e} >= {tol:.1e}")
    return ValidationReport(table, not failures, failures)
