"""Command line driver.

Subcommands expose the library's capabilities over deterministic JSON
or CSV payloads: `curvature` (one metric's curvature data), `sweep`
(classification over a parameter grid), `criterion` (pairwise
comparison), `yamabe` (quotient minimization), `pathcheck` (terminal
window along a path), and `dump-grid` (discretized metric dump).

Exit codes: 0 on success, 1 when a computation fails at runtime
(non-finite iterates, violated hypotheses, degenerate trials), 2 when
the request itself is invalid (bad flags, malformed files, metrics
failing structural invariants).  Payloads are byte-identical across
reruns of the same request and seed.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import criterion as crit
from .conformal_energy import neumann_residual  # noqa: F401  (re-exported for drivers)
from .errors import (
    ChartConsistencyError,
    ChartDomainError,
    DegenerateTrialError,
    HypothesisViolationError,
    InputFormatError,
    InvalidMetricError,
    NumericalFailureError,
    RelYamabeError,
)
from .lie_curvature import (
    BergerParams,
    FrameMetric,
    LieAlgebraFrame,
    berger_ricci_closed,
    berger_scalar_closed,
    curvature_report,
    su2_structure_constants,
)
from .su2_chart import HopfGrid, chart_metric
from .yamabe_estimator import EstimatorOptions, estimate

__all__ = ["RunConfig", "main"]

_INPUT_ERRORS = (InputFormatError, InvalidMetricError, ChartDomainError)
_RUNTIME_ERRORS = (
    NumericalFailureError,
    HypothesisViolationError,
    DegenerateTrialError,
    ChartConsistencyError,
)

_SWEEP_COLUMNS = ("s", "t", "R", "einstein_dev", "min_eig", "gamma", "verdict")
_GRID_COLUMNS = (
    "eta",
    "xi1",
    "xi2",
    "sqrt_det",
    "g_eta_eta",
    "g_eta_xi1",
    "g_eta_xi2",
    "g_xi1_xi1",
    "g_xi1_xi2",
    "g_xi2_xi2",
)


@dataclass(frozen=True)
class RunConfig:
    """Common output/determinism settings shared by every subcommand."""

    out: str | None = None
    format: str = "json"
    seed: int = 0
    quiet: bool = False

    def validate(self) -> "RunConfig":
        if self.format not in ("json", "csv"):
            raise InputFormatError(f"format must be 'json' or 'csv', got {self.format!r}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise InputFormatError(f"seed must be a non-negative integer, got {self.seed}")
        return self


# === parsing helpers =====================================================


def parse_range(text: str, name: str) -> np.ndarray:
    """Parse 'a:b:n' into n uniform samples of [a, b].  n = 1 requires
    a = b; otherwise n >= 2 and a < b."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InputFormatError(f"{name}: expected 'start:stop:count', got {text!r}")
    try:
        a, b = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError as exc:
        raise InputFormatError(f"{name}: could not parse {text!r} ({exc})") from exc
    if not (math.isfinite(a) and math.isfinite(b)):
        raise InputFormatError(f"{name}: endpoints must be finite in {text!r}")
    if n == 1:
        if a != b:
            raise InputFormatError(f"{name}: a single sample needs start == stop, got {text!r}")
        return np.array([a])
    if n < 1:
        raise InputFormatError(f"{name}: count must be a positive integer, got {text!r}")
    if a >= b:
        raise InputFormatError(f"{name}: needs start < stop for count > 1, got {text!r}")
    return a + (b - a) * np.arange(n) / (n - 1)


def parse_berger_token(token: str) -> BergerParams:
    """Parse 'berger:S,T' into parameters."""
    body = token.split(":", 1)[1]
    pieces = body.split(",")
    if len(pieces) != 2:
        raise InputFormatError(f"expected 'berger:S,T', got {token!r}")
    try:
        s, t = float(pieces[0]), float(pieces[1])
    except ValueError as exc:
        raise InputFormatError(f"expected numeric parameters in {token!r} ({exc})") from exc
    return BergerParams(s, t)


def load_metric_spec(path: str) -> tuple[LieAlgebraFrame, FrameMetric, BergerParams | None]:
    """Load a metric description from a JSON file.

    Two forms are accepted: {"berger": {"s": ..., "t": ...}} or
    {"metric": [[...]x3], "structure_constants": [[[...]]]} with the
    structure constants optional (defaulting to the su(2) frame).
    Unknown keys are rejected.
    """
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read metric file {path!r}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"metric file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError(f"metric file {path!r} must hold a JSON object")

    if "berger" in doc:
        extra = set(doc) - {"berger"}
        if extra:
            raise InputFormatError(
                f"metric file {path!r}: unknown keys {sorted(extra)} next to 'berger'"
            )
        body = doc["berger"]
        if not isinstance(body, dict) or set(body) != {"s", "t"}:
            raise InputFormatError(
                f"metric file {path!r}: 'berger' must be an object with exactly "
                "the keys 's' and 't'"
            )
        params = BergerParams(float(body["s"]), float(body["t"]))
        return su2_structure_constants(), params.metric(), params

    allowed = {"metric", "structure_constants"}
    extra = set(doc) - allowed
    if extra:
        raise InputFormatError(
            f"metric file {path!r}: unknown keys {sorted(extra)}; "
            f"expected 'berger' or {sorted(allowed)}"
        )
    if "metric" not in doc:
        raise InputFormatError(f"metric file {path!r}: missing 'metric' (or 'berger') entry")
    metric = FrameMetric(np.asarray(doc["metric"], dtype=float))
    if "structure_constants" in doc:
        frame = LieAlgebraFrame(c=np.asarray(doc["structure_constants"], dtype=float))
    else:
        frame = su2_structure_constants()
    return frame, metric, None


def resolve_metric_token(token: str) -> tuple[LieAlgebraFrame, FrameMetric, BergerParams | None]:
    """Resolve a metric argument: 'round', 'berger:S,T', or a JSON file path."""
    if token == "round":
        return su2_structure_constants(), FrameMetric.round(), BergerParams(1.0, 1.0)
    if token.startswith("berger:"):
        params = parse_berger_token(token)
        return su2_structure_constants(), params.metric(), params
    return load_metric_spec(token)


def resolve_geometry(token: str) -> BergerParams:
    """Geometry names accepted by grid-based subcommands."""
    if token in ("round", "round-hemisphere"):
        return BergerParams(1.0, 1.0)
    if token.startswith("berger:"):
        return parse_berger_token(token)
    raise InputFormatError(
        f"unknown geometry {token!r}; expected 'round', 'round-hemisphere', or 'berger:S,T'"
    )


# === output formatting ===================================================


def _pythonify(value):
    """Convert numpy scalars/arrays to builtins and map non-finite floats
    to None so the JSON stays standard."""
    if isinstance(value, dict):
        return {k: _pythonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_pythonify(v) for v in value]
    if isinstance(value, np.ndarray):
        return _pythonify(value.tolist())
    if isinstance(value, (np.floating, float)):
        f = float(value)
        return f if math.isfinite(f) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def _csv_cell(value) -> str:
    if isinstance(value, (np.floating, float)):
        f = float(value)
        return repr(f) if math.isfinite(f) else "nan"
    if isinstance(value, (np.integer, int)) and not isinstance(value, bool):
        return str(int(value))
    return str(value)


def render_rows_csv(rows, columns) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_csv_cell(row[c]) for c in columns) + "\n")
    return buf.getvalue()


def render_payload(payload, cfg: RunConfig, columns=None) -> str:
    """Render either a dict payload or a (rows, columns) table."""
    if cfg.format == "csv":
        if columns is not None:
            return render_rows_csv(payload, columns)
        flat = _pythonify(payload)
        lines = ["key,value"]
        for key in sorted(flat):
            val = flat[key]
            if isinstance(val, (dict, list)):
                val = json.dumps(val, sort_keys=True)
                val = '"' + val.replace('"', '""') + '"'
            elif val is None:
                val = "nan"
            elif isinstance(val, float):
                val = repr(val)
            lines.append(f"{key},{val}")
        return "\n".join(lines) + "\n"
    if columns is not None:
        return json.dumps({"rows": _pythonify(list(payload))}, indent=2, sort_keys=True) + "\n"
    return json.dumps(_pythonify(payload), indent=2, sort_keys=True) + "\n"


def emit(text: str, summary: str, cfg: RunConfig) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if not cfg.quiet:
        sys.stderr.write(summary.rstrip("\n") + "\n")


# === subcommands =========================================================


def cmd_curvature(args: argparse.Namespace, cfg: RunConfig) -> None:
    if args.spec is not None:
        if args.s is not None or args.t is not None:
            raise InputFormatError("--spec excludes --s/--t")
        frame, metric, params = load_metric_spec(args.spec)
    else:
        if args.s is None or args.t is None:
            raise InputFormatError("curvature needs either --s and --t, or --spec FILE")
        params = BergerParams(args.s, args.t)
        frame, metric = su2_structure_constants(), params.metric()

    rep = curvature_report(frame, metric)
    payload = rep.to_dict()
    summary = f"scalar curvature R = {rep.scalar:.12g}"
    if params is not None:
        closed_r = berger_scalar_closed(params)
        closed_eigs = np.sort(berger_ricci_closed(params))
        payload["closed_form_delta"] = {
            "scalar": abs(rep.scalar - closed_r),
            "ricci_eigenvalues": float(
                np.abs(np.sort(rep.ricci_eigenvalues) - closed_eigs).max()
            ),
        }
        payload["s"], payload["t"] = params.s, params.t
        summary += (
            f" (closed-form delta {payload['closed_form_delta']['scalar']:.3e}), "
            f"einstein deviation {rep.einstein_deviation:.3e}"
        )
    emit(render_payload(payload, cfg), summary, cfg)


def cmd_sweep(args: argparse.Namespace, cfg: RunConfig) -> None:
    s_values = parse_range(args.s, "--s")
    t_values = parse_range(args.t, "--t")
    rows = crit.berger_sweep(s_values, t_values)
    n_valid = sum(1 for r in rows if r["verdict"] != "invalid")
    summary = f"swept {len(rows)} parameter pairs ({n_valid} in domain)"
    emit(render_payload(rows, cfg, columns=_SWEEP_COLUMNS), summary, cfg)


def cmd_criterion(args: argparse.Namespace, cfg: RunConfig) -> None:
    frame_g, metric_g, _ = resolve_metric_token(args.g)
    frame_h, metric_h, _ = resolve_metric_token(args.h)
    r_g = curvature_report(frame_g, metric_g).scalar
    r_h = curvature_report(frame_h, metric_h).scalar
    report = crit.theorem1_check(metric_g, r_g, metric_h, r_h)
    payload = report.to_dict()
    summary = (
        f"verdict {report.verdict}: min_eig = {report.min_eig:.12g}, "
        f"gamma = {report.gamma:.12g}"
    )
    emit(render_payload(payload, cfg), summary, cfg)


def cmd_yamabe(args: argparse.Namespace, cfg: RunConfig) -> None:
    params = resolve_geometry(args.geometry)
    grid = HopfGrid.cube(args.resolution)
    metric = chart_metric(grid, params)
    scalar = curvature_report(su2_structure_constants(), params.metric()).scalar
    opts = EstimatorOptions(
        max_iters=args.max_iters,
        step=args.step,
        tol=args.tol,
        restarts=args.restarts,
        seed=cfg.seed,
    )
    result = estimate(metric, scalar, opts)
    summary = (
        f"quotient estimate {result.value:.8f} "
        f"(converged={result.converged}, iterations={result.iterations_used})"
    )
    emit(render_payload(result.to_dict(), cfg), summary, cfg)


def cmd_pathcheck(args: argparse.Namespace, cfg: RunConfig) -> None:
    report = crit.corollary_path_check(
        crit.berger_path(args.s), args.t_start, args.t_end, args.steps
    )
    payload = report.to_dict()
    summary = (
        f"delta = {report.delta:.12g}, endpoint scalar = {report.endpoint_scalar:.3e} "
        f"over [{report.t_start:g}, {report.t_end:g}]"
    )
    if cfg.format == "csv":
        columns = ("t", "scalar", "min_eig", "gamma", "verdict")
        emit(render_payload([s.to_dict() for s in report.samples], cfg, columns), summary, cfg)
    else:
        emit(render_payload(payload, cfg), summary, cfg)


def cmd_dump_grid(args: argparse.Namespace, cfg: RunConfig) -> None:
    params = resolve_geometry(args.geometry)
    grid = HopfGrid.cube(args.resolution)
    metric = chart_metric(grid, params)
    e, x1, x2 = grid.meshes()
    comps = {
        "eta": e,
        "xi1": x1,
        "xi2": x2,
        "sqrt_det": metric.sqrt_det,
        "g_eta_eta": metric.g[..., 0, 0],
        "g_eta_xi1": metric.g[..., 0, 1],
        "g_eta_xi2": metric.g[..., 0, 2],
        "g_xi1_xi1": metric.g[..., 1, 1],
        "g_xi1_xi2": metric.g[..., 1, 2],
        "g_xi2_xi2": metric.g[..., 2, 2],
    }
    flat = {k: v.reshape(-1) for k, v in comps.items()}
    rows = [
        {k: float(flat[k][i]) for k in _GRID_COLUMNS} for i in range(grid.size)
    ]
    summary = f"dumped {grid.size} cells at resolution {args.resolution}"
    emit(render_payload(rows, cfg, columns=_GRID_COLUMNS), summary, cfg)


# === argument wiring =====================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write the payload to PATH instead of stdout")
    common.add_argument("--format", default=None, choices=("json", "csv"), help="payload format")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized subcommands")
    common.add_argument("--quiet", action="store_true", help="suppress the stderr summary line")

    parser = argparse.ArgumentParser(
        prog="relyamabe",
        description="Curvature, comparison criterion, and conformal quotient "
        "estimation for left invariant metrics on the 3-sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curvature", parents=[common], help="curvature of one metric")
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--spec", default=None, help="JSON metric description file")
    p.set_defaults(fn=cmd_curvature, default_format="json")

    p = sub.add_parser("sweep", parents=[common], help="classify a parameter grid")
    p.add_argument("--s", required=True, help="range start:stop:count")
    p.add_argument("--t", required=True, help="range start:stop:count")
    p.set_defaults(fn=cmd_sweep, default_format="csv")

    p = sub.add_parser("criterion", parents=[common], help="pairwise comparison check")
    p.add_argument("--g", required=True, help="reference: round | berger:S,T | file.json")
    p.add_argument("--h", required=True, help="candidate: round | berger:S,T | file.json")
    p.set_defaults(fn=cmd_criterion, default_format="json")

    p = sub.add_parser("yamabe", parents=[common], help="minimize the conformal quotient")
    p.add_argument("--geometry", default="round-hemisphere")
    p.add_argument("--resolution", type=int, default=32)
    p.add_argument("--max-iters", type=int, default=400)
    p.add_argument("--step", type=float, default=0.02)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--restarts", type=int, default=3)
    p.set_defaults(fn=cmd_yamabe, default_format="json")

    p = sub.add_parser("pathcheck", parents=[common], help="terminal window along a path")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--t-start", type=float, required=True)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--steps", type=int, default=100)
    p.set_defaults(fn=cmd_pathcheck, default_format="json")

    p = sub.add_parser("dump-grid", parents=[common], help="dump the discretized metric")
    p.add_argument("--geometry", default="round-hemisphere")
    p.add_argument("--resolution", type=int, default=16)
    p.set_defaults(fn=cmd_dump_grid, default_format="csv")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format if args.format is not None else args.default_format
    try:
        cfg = RunConfig(out=args.out, format=fmt, seed=args.seed, quiet=args.quiet).validate()
        args.fn(args, cfg)
    except _INPUT_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except _RUNTIME_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except RelYamabeError as exc:  # anything new in the taxonomy: runtime class
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except BrokenPipeError:
        # the consumer closed stdout early (e.g. piping into head);
        # park stdout on devnull so interpreter shutdown stays quiet
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
