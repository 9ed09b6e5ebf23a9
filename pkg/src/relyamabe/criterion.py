"""Comparison criterion between two left invariant metrics.

Given a reference metric G with scalar curvature R_g > 0 and a
candidate H with scalar curvature R_h > 0, the criterion asks whether

    R_g * G  -  R_h * H   is positive (semi)definite,

equivalently whether the pencil eigenvalues of R_g I - R_h L^{-1} H L^{-T}
(L the Cholesky factor of G) are all positive.  When it holds, the
candidate inherits a lower bound on its conformal quotient from the
reference, with the volume distortion gamma = sqrt(det H / det G)
entering the bound.  Nonpositive candidate scalar curvature needs no
criterion at all, and nonpositive reference curvature is outside the
statement's hypotheses; both short-circuit.

For the Berger family compared against the round sphere the verdict
boundary is an explicit curve t*(s) = s + sqrt(s) + 1 and the scalar
curvature changes sign on the curve t = (1 + sqrt(s))^2; both are
recovered here by bisection on engine-computed quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    HypothesisViolationError,
    InvalidMetricError,
    NumericalFailureError,
)
from .lie_curvature import (
    BergerParams,
    FrameMetric,
    curvature_report,
    einstein_locus_check,
    su2_structure_constants,
)
from .su2_chart import MetricField

__all__ = [
    "VERDICT_APPLIES_STRICT",
    "VERDICT_APPLIES_BOUNDARY",
    "VERDICT_FAILS",
    "VERDICT_NOT_APPLICABLE",
    "VERDICT_AUTO_NONPOSITIVE",
    "CLASS_EINSTEIN",
    "CLASS_STRICT",
    "CLASS_BOUNDARY",
    "CLASS_UNRESOLVED",
    "CLASS_AUTO_NONPOSITIVE",
    "CriterionReport",
    "BergerClassification",
    "PathSample",
    "PathReport",
    "volume_ratio",
    "theorem1_check",
    "berger_classify",
    "boundary_curve",
    "scalar_sign_curve",
    "berger_path",
    "corollary_path_check",
    "berger_sweep",
]

# pairwise-comparison verdicts
VERDICT_APPLIES_STRICT = "AppliesStrict"
VERDICT_APPLIES_BOUNDARY = "AppliesBoundary"
VERDICT_FAILS = "Fails"
VERDICT_NOT_APPLICABLE = "NotApplicable"
VERDICT_AUTO_NONPOSITIVE = "AutoYamabeNonpositive"

# Berger-family classification labels
CLASS_EINSTEIN = "Einstein"
CLASS_STRICT = "Theorem1Strict"
CLASS_BOUNDARY = "Theorem1Boundary"
CLASS_UNRESOLVED = "PositiveScalarUnresolved"
CLASS_AUTO_NONPOSITIVE = "AutoYamabeNonpositive"

#: strict positivity threshold, relative to ||R_g G||_F
_STRICT_REL_TOL = 1e-10
#: semidefiniteness slack, relative to ||R_g G||_F
_PSD_REL_TOL = 1e-12
#: Einstein-locus threshold on the engine deviation
_EINSTEIN_TOL = 1e-10
_ROUND_SCALAR = 6.0
_RATIO_REL_TOL = 1e-8


def _as_frame_metric(m) -> FrameMetric:
    return m if isinstance(m, FrameMetric) else FrameMetric(np.asarray(m, dtype=float))


def volume_ratio(g, h) -> float:
    """Volume distortion gamma = sqrt(det h / det g).

    For frame metrics this is a single determinant ratio.  For grid
    fields the pointwise ratio must be constant across cells to within
    a relative 1e-8 (the two fields must be relatively homogeneous);
    its mean is returned.
    """
    if isinstance(g, MetricField) or isinstance(h, MetricField):
        if not (isinstance(g, MetricField) and isinstance(h, MetricField)):
            raise InvalidMetricError("volume_ratio needs two frame metrics or two fields")
        if g.grid.shape != h.grid.shape:
            raise InvalidMetricError("volume_ratio fields live on different grids")
        ratio = np.sqrt(h.det / g.det)
        mean = float(ratio.mean())
        spread = float(np.abs(ratio - mean).max())
        if spread > _RATIO_REL_TOL * abs(mean):
            raise HypothesisViolationError(
                "volume ratio is not constant across cells "
                f"(relative spread {spread / abs(mean):.3e}); "
                "the two fields are not relatively homogeneous"
            )
        return mean
    gm = _as_frame_metric(g)
    hm = _as_frame_metric(h)
    return float(np.sqrt(hm.det() / gm.det()))


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of the pairwise comparison.  min_eig is the smallest
    pencil eigenvalue of R_g G - R_h H (computed in a G-orthonormal
    frame), strict_margin the same normalized by ||R_g G||_F, and notes
    carries the inputs and tolerances that produced the verdict."""

    gamma: float
    min_eig: float
    strict_margin: float
    verdict: str
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "min_eig": self.min_eig,
            "strict_margin": self.strict_margin,
            "verdict": self.verdict,
            "notes": dict(self.notes),
        }


def theorem1_check(g, r_g: float, h, r_h: float) -> CriterionReport:
    """Decide whether R_g * G - R_h * H is positive (semi)definite.

    The pencil eigenvalues are always computed (callers want them even
    when a short circuit decides the verdict).  Cascade: nonpositive
    R_h means the candidate needs no comparison at all
    (AutoYamabeNonpositive); nonpositive R_g puts the reference outside
    the hypotheses (NotApplicable); otherwise the minimal eigenvalue
    against tolerances scaled by ||R_g G||_F separates strict / boundary
    / failing cases.
    """
    gm = _as_frame_metric(g)
    hm = _as_frame_metric(h)
    r_g = float(r_g)
    r_h = float(r_h)
    if not (np.isfinite(r_g) and np.isfinite(r_h)):
        raise InvalidMetricError(f"scalar curvatures must be finite, got {r_g}, {r_h}")

    chol = gm.cholesky()
    h_on = np.linalg.solve(chol, np.linalg.solve(chol, hm.matrix).T).T
    pencil = r_g * np.eye(3) - r_h * 0.5 * (h_on + h_on.T)
    eigs = np.linalg.eigvalsh(pencil)
    min_eig = float(eigs[0])
    scale = float(np.linalg.norm(r_g * gm.matrix))
    tol_strict = _STRICT_REL_TOL * scale
    tol_psd = _PSD_REL_TOL * scale

    if r_h <= 0.0:
        verdict = VERDICT_AUTO_NONPOSITIVE
    elif r_g <= 0.0:
        verdict = VERDICT_NOT_APPLICABLE
    elif min_eig > tol_strict:
        verdict = VERDICT_APPLIES_STRICT
    elif min_eig >= -tol_psd:
        verdict = VERDICT_APPLIES_BOUNDARY
    else:
        verdict = VERDICT_FAILS

    margin = min_eig / scale if scale > 0.0 else float("nan")
    return CriterionReport(
        gamma=volume_ratio(gm, hm),
        min_eig=min_eig,
        strict_margin=margin,
        verdict=verdict,
        notes={
            "r_g": r_g,
            "r_h": r_h,
            "eigenvalues": eigs.tolist(),
            "tol_strict": tol_strict,
            "tol_psd": tol_psd,
        },
    )


@dataclass(frozen=True)
class BergerClassification:
    """Where a Berger metric lands relative to the round reference."""

    params: BergerParams
    verdict: str
    scalar: float
    einstein_deviation: float
    report: CriterionReport

    def to_dict(self) -> dict:
        return {
            "s": self.params.s,
            "t": self.params.t,
            "verdict": self.verdict,
            "scalar": self.scalar,
            "einstein_deviation": self.einstein_deviation,
            "report": self.report.to_dict(),
        }


def berger_classify(p: BergerParams) -> BergerClassification:
    """Classify diag(1, s, t) against the round sphere (G = I, R_g = 6).

    Einstein metrics are recognized first (engine deviation at most
    1e-10, which in this family means the round point).  Otherwise the
    verdict translates the pairwise comparison: nonpositive scalar
    curvature resolves automatically, a passing comparison transfers
    the round bound, and a failing one leaves the metric unresolved by
    this criterion.
    """
    rep = curvature_report(su2_structure_constants(), p.metric())
    check = theorem1_check(FrameMetric.round(), _ROUND_SCALAR, p.metric(), rep.scalar)
    if rep.einstein_deviation <= _EINSTEIN_TOL:
        verdict = CLASS_EINSTEIN
    elif check.verdict == VERDICT_AUTO_NONPOSITIVE:
        verdict = CLASS_AUTO_NONPOSITIVE
    elif check.verdict == VERDICT_APPLIES_STRICT:
        verdict = CLASS_STRICT
    elif check.verdict == VERDICT_APPLIES_BOUNDARY:
        verdict = CLASS_BOUNDARY
    else:
        verdict = CLASS_UNRESOLVED
    return BergerClassification(
        params=p,
        verdict=verdict,
        scalar=rep.scalar,
        einstein_deviation=rep.einstein_deviation,
        report=check,
    )


def _bisect(fun: Callable[[float], float], lo: float, hi: float, tol: float, what: str) -> float:
    f_lo, f_hi = fun(lo), fun(hi)
    if not (np.isfinite(f_lo) and np.isfinite(f_hi)):
        raise HypothesisViolationError(f"{what}: non-finite values at the bracket ends")
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise HypothesisViolationError(
            f"{what}: no sign change on [{lo:.6g}, {hi:.6g}] "
            f"(f = {f_lo:.3e} and {f_hi:.3e})"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = fun(mid)
        if f_mid == 0.0:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _berger_min_eig(s: float, t: float) -> float:
    p = BergerParams(s, t)
    scal = curvature_report(su2_structure_constants(), p.metric()).scalar
    return theorem1_check(FrameMetric.round(), _ROUND_SCALAR, p.metric(), scal).min_eig


def boundary_curve(s: float, tol: float = 1e-8) -> float:
    """The t at which diag(1, s, t) crosses from failing to passing the
    comparison against the round sphere, located by bisection on the
    minimal pencil eigenvalue over t in (s, s + 4]."""
    s = float(s)
    if not np.isfinite(s) or s < 1.0:
        raise InvalidMetricError(f"boundary_curve needs s >= 1, got {s}")
    if not np.isfinite(tol) or tol <= 0.0:
        raise InvalidMetricError(f"tolerance must be positive, got {tol}")
    t_star = _bisect(
        lambda t: _berger_min_eig(s, t), s + 1e-3, s + 4.0, tol, "criterion boundary curve"
    )
    # Self-check against the closed-form root t = s + sqrt(s) + 1; the
    # bisection is the computation, the closed form only guards it.
    expected = s + math.sqrt(s) + 1.0
    if abs(t_star - expected) > 1e-6:
        raise NumericalFailureError(
            f"criterion boundary curve at s={s:g} found t={t_star:.9f}, "
            f"inconsistent with the closed-form root {expected:.9f}"
        )
    return t_star


def scalar_sign_curve(s: float, tol: float = 1e-8) -> float:
    """The t at which the scalar curvature of diag(1, s, t) changes
    sign, located by bisection over t in [s, s + 8]."""
    s = float(s)
    if not np.isfinite(s) or s < 1.0:
        raise InvalidMetricError(f"scalar_sign_curve needs s >= 1, got {s}")
    if not np.isfinite(tol) or tol <= 0.0:
        raise InvalidMetricError(f"tolerance must be positive, got {tol}")

    def fun(t: float) -> float:
        return curvature_report(
            su2_structure_constants(), BergerParams(s, t).metric()
        ).scalar

    t_zero = _bisect(fun, s, s + 8.0, tol, "scalar curvature sign curve")
    expected = (1.0 + math.sqrt(s)) ** 2
    if abs(t_zero - expected) > 1e-6:
        raise NumericalFailureError(
            f"scalar sign curve at s={s:g} found t={t_zero:.9f}, "
            f"inconsistent with the closed-form root {expected:.9f}"
        )
    return t_zero


def berger_path(s: float) -> Callable[[float], BergerParams]:
    """The one-parameter family t -> diag(1, s, t) at fixed s."""
    s = float(s)
    return lambda t: BergerParams(s, t)


@dataclass(frozen=True)
class PathSample:
    t: float
    scalar: float
    min_eig: float
    gamma: float
    verdict: str

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "scalar": self.scalar,
            "min_eig": self.min_eig,
            "gamma": self.gamma,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class PathReport:
    """Sampled run of the comparison along a metric path ending at a
    scalar-flat metric.  delta is the length of the terminal parameter
    window on which the comparison holds at every sample (endpoint
    excluded: the endpoint is scalar flat, so the comparison no longer
    speaks there)."""

    t_start: float
    t_end: float
    steps: int
    samples: tuple[PathSample, ...]
    delta: float
    endpoint_scalar: float

    def to_dict(self) -> dict:
        return {
            "t_start": self.t_start,
            "t_end": self.t_end,
            "steps": self.steps,
            "delta": self.delta,
            "endpoint_scalar": self.endpoint_scalar,
            "samples": [s.to_dict() for s in self.samples],
        }


def corollary_path_check(
    path: Callable[[float], BergerParams],
    t_start: float,
    t_end: float,
    steps: int,
    end_tol: float = 1e-10,
) -> PathReport:
    """Check the path hypotheses and measure the terminal window on
    which the comparison against the path's starting metric holds.

    The path is sampled at steps + 1 uniform parameters and each sample
    is compared against path(t_start) (the start compares against
    itself, landing exactly on the boundary verdict).  Hypotheses:
    scalar curvature must be positive at every sample before the
    endpoint (condition 3) and must vanish to `end_tol` at the endpoint
    (condition 4); violations raise with the violated condition named.
    delta is t_end minus the first parameter of the terminal block of
    samples (endpoint excluded) where the comparison verdict is strict
    or boundary; a degenerate path (t_start = t_end) has empty interior
    and delta 0 with nothing to check.
    """
    t_start = float(t_start)
    t_end = float(t_end)
    if not (np.isfinite(t_start) and np.isfinite(t_end)) or t_end < t_start:
        raise InvalidMetricError(f"need t_start <= t_end, got [{t_start}, {t_end}]")
    if int(steps) != steps or steps < 1:
        raise InvalidMetricError(f"steps must be a positive integer, got {steps}")

    if t_end == t_start:
        p = path(t_start)
        rep = curvature_report(su2_structure_constants(), p.metric())
        return PathReport(
            t_start=t_start,
            t_end=t_end,
            steps=int(steps),
            samples=(),
            delta=0.0,
            endpoint_scalar=rep.scalar,
        )

    ts = t_start + (t_end - t_start) * np.arange(steps + 1) / steps
    frame = su2_structure_constants()
    ref_metric = path(t_start).metric()
    ref_scalar = curvature_report(frame, ref_metric).scalar
    samples = []
    for t in ts:
        p = path(float(t))
        rep = curvature_report(frame, p.metric())
        check = theorem1_check(ref_metric, ref_scalar, p.metric(), rep.scalar)
        samples.append(
            PathSample(
                t=float(t),
                scalar=rep.scalar,
                min_eig=check.min_eig,
                gamma=check.gamma,
                verdict=check.verdict,
            )
        )

    endpoint_scalar = samples[-1].scalar
    for smp in samples[:-1]:
        if smp.scalar <= 0.0:
            raise HypothesisViolationError(
                "condition (3) violated: scalar curvature must be positive "
                f"before the endpoint, got {smp.scalar:.6g} at t = {smp.t:.6g}"
            )
    if abs(endpoint_scalar) > end_tol:
        raise HypothesisViolationError(
            "condition (4) violated: endpoint scalar curvature must vanish, "
            f"got {endpoint_scalar:.6g} at t = {samples[-1].t:.6g} (tol {end_tol:g})"
        )

    # The endpoint sample is scalar-flat by construction, so its verdict is
    # the nonpositive-scalar branch rather than Applies*; the terminal run of
    # Applies verdicts is therefore scanned over the interior samples, and
    # delta measures from the start of that run to t_end.
    holds = [
        smp.verdict in (VERDICT_APPLIES_STRICT, VERDICT_APPLIES_BOUNDARY)
        for smp in samples[:-1]
    ]
    delta = 0.0
    if holds and holds[-1]:
        first = len(holds) - 1
        while first > 0 and holds[first - 1]:
            first -= 1
        delta = t_end - samples[first].t
    return PathReport(
        t_start=t_start,
        t_end=t_end,
        steps=int(steps),
        samples=tuple(samples),
        delta=float(delta),
        endpoint_scalar=endpoint_scalar,
    )


def berger_sweep(s_values, t_values) -> list[dict]:
    """Classify a grid of Berger parameters; one row per (s, t) in
    s-major order.  Pairs outside the normalized domain t >= s get the
    verdict "invalid" with NaN numeric columns."""
    rows = []
    for s in np.asarray(s_values, dtype=float):
        for t in np.asarray(t_values, dtype=float):
            try:
                cls = berger_classify(BergerParams(float(s), float(t)))
            except InvalidMetricError:
                rows.append(
                    {
                        "s": float(s),
                        "t": float(t),
                        "R": float("nan"),
                        "einstein_dev": float("nan"),
                        "min_eig": float("nan"),
                        "gamma": float("nan"),
                        "verdict": "invalid",
                    }
                )
                continue
            rows.append(
                {
                    "s": float(s),
                    "t": float(t),
                    "R": cls.scalar,
                    "einstein_dev": cls.einstein_deviation,
                    "min_eig": cls.report.min_eig,
                    "gamma": cls.report.gamma,
                    "verdict": cls.verdict,
                }
            )
    return rows
