"""Command-line front end: ``ghopt solve | sweep | fit``.

Exit status is 0 when every run ends Stationary, 2 when any run stops for
another reason (MaxIter or StepBelowTol), 1 on bad input or I/O errors.
Artifacts go to ``--out``, else ``$GHOPT_OUTPUT_DIR``, else ``./ghopt-out``.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .calculus import WeightPair
from .dataio import (
    IoError,
    ParseError,
    build_fit_report,
    emit_fit_report,
    emit_trace,
    parse_interval_csv,
    shipped_dataset,
)
from .interval import IntervalError
from .least_squares import (
    FIT_GRAD_TOL,
    FIT_MAX_ALPHA,
    FIT_MAX_ITER,
    ModelSpec,
    fit,
    fit_config,
)
from .problems import BUILTINS, SWEEPS, get_problem
from .solver import LineSearchConfig, SolverConfig, SolveTrace, Status, solve_w_gradient

log = logging.getLogger("ghopt")

OUTPUT_ENV = "GHOPT_OUTPUT_DIR"
EXIT_OK, EXIT_CONFIG, EXIT_NOT_CONVERGED = 0, 1, 2


class ConfigError(ValueError):
    pass


def _floats(text: str) -> Tuple[float, ...]:
    try:
        vals = tuple(float(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("expected at least one number")
    return vals


def _weight(text: str) -> float:
    w = float(text)
    if not 0.0 <= w <= 1.0:
        raise argparse.ArgumentTypeError(f"weight must lie in [0, 1], got {w}")
    return w


def _output_dir(arg: Optional[str]) -> Path:
    out = Path(arg or os.environ.get(OUTPUT_ENV) or "ghopt-out")
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output directory {out}: {exc.strerror or exc}") from exc
    if not os.access(out, os.W_OK):
        raise IoError(f"output directory {out} is not writable")
    return out


@dataclass(frozen=True)
class RunSpec:
    problem: str
    w: float
    x0: Tuple[float, ...]
    grad_tol: float
    max_iter: int


def _run_one(spec: RunSpec) -> SolveTrace:
    # Top-level so worker processes can unpickle it.
    f = get_problem(spec.problem)
    cfg = SolverConfig(spec.x0, WeightPair(spec.w), grad_tol=spec.grad_tol, max_iter=spec.max_iter)
    return solve_w_gradient(f, cfg)


def _execute(specs: Sequence[RunSpec], jobs: int) -> List[SolveTrace]:
    if jobs <= 1 or len(specs) == 1:
        return [_run_one(s) for s in specs]
    with ProcessPoolExecutor(max_workers=min(jobs, len(specs))) as pool:
        return list(pool.map(_run_one, specs))


def _validate_starts(problem: str, starts: Sequence[Tuple[float, ...]]) -> None:
    f = get_problem(problem)
    for x0 in starts:
        if len(x0) != f.dim:
            raise ConfigError(f"start {x0} has {len(x0)} coordinates; {problem} needs {f.dim}")
        if not f.in_domain(x0):
            raise ConfigError(f"start {x0} lies outside the domain box {f.domain_box}")


def _write_summary(rows: List[list], header: List[str], fmt: str, path: Path) -> None:
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            if fmt == "json":
                json.dump([dict(zip(header, r)) for r in rows], fh, indent=1)
                fh.write("\n")
            else:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(header)
                w.writerows(rows)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _exit_status(statuses: Sequence[Status]) -> int:
    return EXIT_OK if all(s is Status.STATIONARY for s in statuses) else EXIT_NOT_CONVERGED


def run_solve(problem: str, weights, starts, grad_tol: float, max_iter: int,
              out: Path, fmt: str, jobs: int = 1) -> int:
    if problem not in BUILTINS:
        raise ConfigError(f"unknown problem {problem!r}; choose from {', '.join(sorted(BUILTINS))}")
    if not starts:
        raise ConfigError("at least one start point is needed")
    _validate_starts(problem, starts)
    specs = [RunSpec(problem, w, tuple(x0), grad_tol, max_iter) for w in weights for x0 in starts]
    traces = _execute(specs, jobs)

    n = len(starts[0])
    header = ["w", *(f"x0_{i + 1}" for i in range(n)), "iterations",
              *(f"x_{i + 1}" for i in range(n)), "status"]
    rows = []
    for i, (spec, tr) in enumerate(zip(specs, traces)):
        rows.append([spec.w, *spec.x0, tr.n_iter, *(float(v) for v in tr.x), tr.status.value])
        emit_trace(tr, fmt, out / f"trace_{problem}_{i:03d}.{fmt}")
        log.info("w=%g x0=%s -> %s after %d steps at %s", spec.w, spec.x0,
                 tr.status.value, tr.n_iter, np.array2string(tr.x, precision=6))
    summary = out / f"solve_{problem}.{fmt}"
    _write_summary(rows, header, fmt, summary)
    print(f"{len(rows)} runs written to {summary}")
    return _exit_status([t.status for t in traces])


def run_fit(model: str, data_path: Optional[str], c: Tuple[float, float], beta0, w: float,
            grad_tol: float, max_iter: int, max_alpha: float, out: Path, fmt: str) -> int:
    m = ModelSpec(model, c)
    if len(beta0) != m.param_dim:
        raise ConfigError(f"{model} model takes {m.param_dim} parameters, got {len(beta0)}")
    data = shipped_dataset(model) if data_path is None else parse_interval_csv(data_path)
    cfg = fit_config(beta0, WeightPair(w), grad_tol=grad_tol, max_iter=max_iter,
                     line_search=LineSearchConfig(max_alpha=max_alpha))
    result = fit(m, data, beta0, WeightPair(w), cfg)
    report = build_fit_report(m, data, w, result)
    stem = f"fit_{model}_w{w:g}"
    path = emit_fit_report(report, fmt, out / f"{stem}.{fmt}")
    emit_trace(result.trace, fmt, out / f"{stem}_trace.{fmt}")
    beta = ", ".join(f"{b:.4f}" for b in report.beta_hat)
    print(f"{report.status} after {report.n_iter} steps: beta_hat = ({beta}), "
          f"error = {report.error}; report at {path}")
    return _exit_status([result.trace.status])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ghopt", description="gH-gradient interval optimization")
    p.add_argument("-v", "--verbose", action="store_true", help="log each run")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grad_tol, max_iter):
        sp.add_argument("--grad-tol", type=float, default=grad_tol)
        sp.add_argument("--max-iter", type=int, default=max_iter)
        sp.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV} or ./ghopt-out)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("solve", help="run the W-gH-gradient method on a built-in problem")
    s.add_argument("--problem", required=True, help=", ".join(sorted(BUILTINS)))
    s.add_argument("--w", type=_floats, default=(0.5,), help="weights, e.g. '0.1,0.5'")
    s.add_argument("--x0", type=_floats, action="append", required=True,
                   help="start point, e.g. '0,6'; repeat for several")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    common(s, 1e-6, 500)

    sw = sub.add_parser("sweep", help="the standard weights and starts of a built-in problem")
    sw.add_argument("--problem", required=True, help=", ".join(sorted(SWEEPS)))
    sw.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common(sw, 1e-6, 500)

    f = sub.add_parser("fit", help="interval least-squares fit")
    f.add_argument("--model", choices=("poly", "logistic"), required=True)
    f.add_argument("--data", help="CSV with header x_lo,x_hi,y_lo,y_hi (default: shipped set)")
    f.add_argument("--c-lo", type=float, required=True)
    f.add_argument("--c-hi", type=float, required=True)
    f.add_argument("--beta0", type=_floats, required=True)
    f.add_argument("--w", type=_weight, default=0.5)
    f.add_argument("--max-alpha", type=float, default=FIT_MAX_ALPHA)
    common(f, FIT_GRAD_TOL, FIT_MAX_ITER)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; usage errors are config errors here.
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        out = _output_dir(args.out)
        if args.command == "solve":
            for w in args.w:
                _weight(str(w))
            return run_solve(args.problem, args.w, args.x0, args.grad_tol, args.max_iter,
                             out, args.format, args.jobs)
        if args.command == "sweep":
            if args.problem not in SWEEPS:
                raise ConfigError(f"no standard sweep for {args.problem!r}; choose from {', '.join(SWEEPS)}")
            weights, starts = SWEEPS[args.problem]
            return run_solve(args.problem, weights, starts, args.grad_tol, args.max_iter,
                             out, args.format, args.jobs)
        return run_fit(args.model, args.data, (args.c_lo, args.c_hi), args.beta0, args.w,
                       args.grad_tol, args.max_iter, args.max_alpha, out, args.format)
    except (ConfigError, ParseError, IoError, IntervalError, ValueError, KeyError,
            argparse.ArgumentTypeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"ghopt: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
