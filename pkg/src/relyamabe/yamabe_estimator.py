"""Projected-gradient estimation of the conformal quotient infimum.

The Rayleigh-type quotient Q(u) from the conformal energy module is
minimized over positive grid fields by normalized gradient descent
with a backtracking line search: each step moves against the quotient
gradient and renormalizes to unit critical norm.  The objective trace
is non-increasing by construction (steps are only accepted when they
do not increase Q).

The landscape is benign — on round and Berger backgrounds the known
minimizers are low-frequency — so a deterministic multistart (the
constant plus a few seeded low-frequency perturbations) suffices; the
whole procedure is reproducible bit for bit from the seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sps

from .conformal_energy import (
    CONFORMAL_COEFF,
    QuotientInput,
    einstein_hilbert,
    neumann_residual,
    rayleigh_quotient,
)
from .errors import InputFormatError, NumericalFailureError
from .su2_chart import MetricField

__all__ = [
    "EstimatorOptions",
    "QuotientEstimate",
    "ProbeReport",
    "estimate",
    "yamabe_property_probe",
]

#: accepted steps with relative decrease below tol required to declare convergence
_CONSECUTIVE = 5
#: maximum step halvings per line search
_BACKTRACKS = 40
#: step growth factor after an accepted step
_GROWTH = 1.3
_LP = 6  # critical exponent, 2n/(n-2) at n = 3


@dataclass(frozen=True)
class EstimatorOptions:
    """Tuning knobs of the minimizer.  restarts counts the random
    starts tried in addition to the constant start."""

    max_iters: int = 400
    step: float = 0.02
    tol: float = 1e-9
    restarts: int = 3
    seed: int = 0

    def __post_init__(self):
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise InputFormatError(f"max_iters must be a positive integer, got {self.max_iters}")
        if not np.isfinite(self.step) or self.step <= 0.0:
            raise InputFormatError(f"step must be positive, got {self.step}")
        if not np.isfinite(self.tol) or self.tol <= 0.0:
            raise InputFormatError(f"tol must be positive, got {self.tol}")
        if int(self.restarts) != self.restarts or self.restarts < 1:
            raise InputFormatError(f"restarts must be a positive integer, got {self.restarts}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise InputFormatError(f"seed must be a non-negative integer, got {self.seed}")


@dataclass(frozen=True)
class QuotientEstimate:
    """Result of the minimization.  value equals the Rayleigh quotient
    of `minimizer` (recomputed through the same code path every caller
    uses); trace is the non-increasing objective history of the best
    start."""

    value: float
    minimizer: np.ndarray = field(repr=False)
    iterations_used: int
    converged: bool
    neumann_residual_of_minimizer: float
    trace: tuple[float, ...] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "converged": self.converged,
            "iterations": self.iterations_used,
            "neumann_residual": self.neumann_residual_of_minimizer,
            "trace": list(self.trace),
        }


def _stiffness(metric: MetricField) -> sps.csr_matrix:
    """Sparse form of the Dirichlet energy: f^T A f = integral |df|^2 dV
    under the grid quadrature."""
    ops = metric.grid.diff_ops()
    wf = metric.weight.reshape(-1)
    acc = None
    for i in range(3):
        for j in range(3):
            block = ops[i].T @ sps.diags(wf * metric.inv[..., i, j].reshape(-1)) @ ops[j]
            acc = block if acc is None else acc + block
    return acc.tocsr()


class _QuotientWork:
    """Flattened-array quotient, gradient, and normalization used inside
    the descent loop."""

    def __init__(self, metric: MetricField, scalar):
        self.a = CONFORMAL_COEFF
        self.stiffness = _stiffness(metric)
        self.w = metric.weight.reshape(-1)
        r = np.asarray(scalar, dtype=float)
        self.r = np.full(self.w.shape, float(r)) if r.ndim == 0 else r.reshape(-1)

    def normalize(self, f: np.ndarray) -> np.ndarray:
        return f / np.sum(self.w * np.abs(f) ** _LP) ** (1.0 / _LP)

    def quotient(self, f: np.ndarray) -> float:
        num = self.a * (f @ (self.stiffness @ f)) + np.sum(self.w * self.r * f * f)
        den = np.sum(self.w * np.abs(f) ** _LP) ** (1.0 / 3.0)
        return num / den

    def gradient(self, f: np.ndarray) -> np.ndarray:
        """Gradient of the numerator against the quadrature inner
        product; the projection step handles the constraint."""
        return (2.0 * self.a * (self.stiffness @ f) + 2.0 * self.w * self.r * f) / self.w


def _minimize_one(work: _QuotientWork, f0: np.ndarray, opts: EstimatorOptions):
    """Backtracking projected gradient descent from one start.

    Returns (f, q, trace, converged).  A line search that exhausts its
    halvings without finding a non-increasing step means the iterate is
    stationary to machine precision, which also counts as converged.
    """
    f = work.normalize(f0)
    q = work.quotient(f)
    trace = [q]
    if not np.isfinite(q):
        raise NumericalFailureError(
            f"quotient is non-finite at the start ({q})", trace=trace
        )
    step = opts.step
    n_small = 0
    for _ in range(opts.max_iters):
        grad = work.gradient(f)
        accepted = False
        for _ in range(_BACKTRACKS):
            cand = work.normalize(f - step * grad)
            qc = work.quotient(cand)
            if not np.isfinite(qc):
                step *= 0.5
                continue
            if qc <= q:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            return f, q, trace, True
        rel = abs(q - qc) / max(abs(q), 1e-30)
        f, q = cand, qc
        trace.append(q)
        step *= _GROWTH
        n_small = n_small + 1 if rel < opts.tol else 0
        if n_small >= _CONSECUTIVE:
            return f, q, trace, True
    return f, q, trace, False


def _random_start(rng: np.random.Generator, meshes) -> np.ndarray:
    """A positive low-frequency perturbation of the constant."""
    e, x1, x2 = meshes
    amp = rng.uniform(0.05, 0.3, size=4)
    ph = rng.uniform(0.0, 2.0 * np.pi, size=2)
    return (
        1.0
        + amp[0] * np.cos(x1)
        + amp[1] * np.cos(2.0 * e)
        + amp[2] * np.sin(x1) * np.cos(x2 + ph[0])
        + amp[3] * np.cos(2.0 * x2 + ph[1]) * np.sin(e)
    ).reshape(-1)


def estimate(metric: MetricField, scalar, options: EstimatorOptions | None = None) -> QuotientEstimate:
    """Estimate inf Q over the conformal class of `metric` (scalar
    curvature `scalar`, constant or per-cell).

    Starts: the constant, then `restarts` seeded low-frequency fields.
    The reported value is the Rayleigh quotient of the best minimizer,
    recomputed through the public quotient so the two are identical by
    construction.
    """
    opts = options or EstimatorOptions()
    work = _QuotientWork(metric, scalar)
    rng = np.random.default_rng(opts.seed)
    meshes = metric.grid.meshes()
    starts = [np.ones(metric.grid.size)]
    for _ in range(opts.restarts):
        starts.append(_random_start(rng, meshes))

    best = None
    for f0 in starts:
        f, q, trace, conv = _minimize_one(work, f0, opts)
        if not np.isfinite(q):
            raise NumericalFailureError(
                f"minimization produced a non-finite quotient ({q})", trace=trace
            )
        if best is None or q < best[1]:
            best = (f, q, trace, conv)
    f, _, trace, conv = best
    minimizer = f.reshape(metric.grid.shape)
    value = rayleigh_quotient(QuotientInput(f=minimizer, metric=metric, scalar_curvature=scalar))
    if not np.isfinite(value):
        raise NumericalFailureError(
            f"final quotient is non-finite ({value})", trace=trace
        )
    return QuotientEstimate(
        value=value,
        minimizer=minimizer,
        iterations_used=len(trace) - 1,
        converged=conv,
        neumann_residual_of_minimizer=neumann_residual(minimizer, metric),
        trace=tuple(trace),
    )


@dataclass(frozen=True)
class ProbeReport:
    """Spot check of the quotient against the background energy over a
    family of admissible trials.  gap_to_energy = min_over_trials -
    energy; with the constant among the trials the gap is never
    positive, and a large negative gap flags trials dipping far below
    the background energy."""

    min_over_trials: float
    energy: float
    gap_to_energy: float
    n_trials: int
    argmin_trial: int

    def to_dict(self) -> dict:
        return {
            "min_over_trials": self.min_over_trials,
            "energy": self.energy,
            "gap_to_energy": self.gap_to_energy,
            "n_trials": self.n_trials,
            "argmin_trial": self.argmin_trial,
        }


def yamabe_property_probe(
    metric: MetricField, scalar, n_trials: int = 100, seed: int = 0
) -> ProbeReport:
    """Evaluate the quotient on a deterministic family of admissible
    trials: the constant, then positive low-frequency fields whose
    xi1-dependence vanishes quadratically at the faces (so they remain
    admissible for the boundary problem)."""
    if int(n_trials) != n_trials or n_trials < 1:
        raise InputFormatError(f"n_trials must be a positive integer, got {n_trials}")
    e, x1, x2 = metric.grid.meshes()
    rng = np.random.default_rng(seed)
    best_q = np.inf
    best_k = 0
    for k in range(n_trials):
        if k == 0:
            u = np.ones(metric.grid.shape)
        else:
            a = rng.uniform(-0.25, 0.25, size=3)
            m = int(rng.integers(1, 3))
            p = int(rng.integers(1, 3))
            ph = float(rng.uniform(0.0, 2.0 * np.pi))
            u = (
                1.0
                + a[0] * np.cos(m * x1)
                + np.sin(x1) ** 2 * (a[1] * np.cos(2 * p * e) + a[2] * np.cos(x2 + ph))
            )
        q = rayleigh_quotient(QuotientInput(f=u, metric=metric, scalar_curvature=scalar))
        if q < best_q:
            best_q, best_k = q, k
    energy = einstein_hilbert(metric, scalar).energy
    return ProbeReport(
        min_over_trials=float(best_q),
        energy=energy,
        gap_to_energy=float(best_q - energy),
        n_trials=int(n_trials),
        argmin_trial=best_k,
    )
