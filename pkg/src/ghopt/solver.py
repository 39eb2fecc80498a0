"""Efficient-direction descent for interval optimization problems.

Two drivers share one iteration loop:

* :func:`solve_general` takes any direction oracle ``d = oracle(x, grad)``
  and checks that ``[0, 0]`` does not dominate ``d^T (.) grad``.
* :func:`solve_w_gradient` uses ``d = -W(grad)``, the weighted
  scalarization of the gH-gradient.

Both stop as soon as every partial gH-derivative contains zero.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .calculus import (
    Ivf,
    WeightPair,
    gh_gradient,
    is_efficient_direction_candidate,
    is_stationary,
    w_map,
)
from .interval import Interval, IntervalError, IntervalVector, dominates, vector_norm

__all__ = [
    "SolverError",
    "ZeroDirection",
    "DegenerateBracket",
    "OracleContractViolation",
    "NonFiniteIterate",
    "LineSearchConfig",
    "SolverConfig",
    "Status",
    "IterationRecord",
    "SolveTrace",
    "DirectionOracle",
    "clip_alpha_to_box",
    "line_search_argeff",
    "w_gradient_oracle",
    "solve_general",
    "solve_w_gradient",
]

logger = logging.getLogger(__name__)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
# Tie-break nudge for the weight when W(grad) vanishes away from a stationary point.
_W_NUDGE = 1e-3


class SolverError(IntervalError):
    pass


class ZeroDirection(SolverError):
    pass


class DegenerateBracket(SolverError):
    pass


class OracleContractViolation(SolverError):
    pass


class NonFiniteIterate(SolverError, ArithmeticError):
    pass


@dataclass(frozen=True)
class LineSearchConfig:
    max_alpha: float = 10.0
    ls_tol: float = 1e-8
    max_ls_iter: int = 200

    def __post_init__(self):
        if not self.max_alpha > 0:
            raise ValueError("max_alpha must be positive")
        if not self.ls_tol > 0:
            raise ValueError("ls_tol must be positive")
        if self.max_ls_iter < 1:
            raise ValueError("max_ls_iter must be at least 1")


@dataclass(frozen=True)
class SolverConfig:
    """Inputs of one solve.

    ``reference`` is an optional known solution; when given, the trace
    records contraction ratios ``|x_{k+1} - ref| / |x_k - ref|``.
    """

    x0: Sequence[float]
    weights: WeightPair = WeightPair(0.5)
    grad_tol: float = 1e-6
    step_tol: float = 1e-12
    max_iter: int = 500
    line_search: LineSearchConfig = LineSearchConfig()
    fd_step: Optional[float] = None
    reference: Optional[Sequence[float]] = None

    def __post_init__(self):
        x0 = tuple(float(v) for v in np.atleast_1d(np.asarray(self.x0, dtype=float)))
        if not x0 or not all(math.isfinite(v) for v in x0):
            raise ValueError(f"x0 must be a non-empty finite point, got {self.x0!r}")
        object.__setattr__(self, "x0", x0)
        if not isinstance(self.weights, WeightPair):
            object.__setattr__(self, "weights", WeightPair(self.weights))
        if not (self.grad_tol > 0 and self.step_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.fd_step is not None and not self.fd_step > 0:
            raise ValueError("fd_step must be positive")
        if self.reference is not None:
            object.__setattr__(self, "reference", tuple(float(v) for v in self.reference))

    def with_(self, **changes) -> "SolverConfig":
        return replace(self, **changes)


class Status(enum.Enum):
    STATIONARY = "Stationary"
    STEP_BELOW_TOL = "StepBelowTol"
    MAX_ITER = "MaxIter"


@dataclass(frozen=True)
class IterationRecord:
    """State at iterate ``k`` and the step taken from it.

    The terminal record has an empty ``direction`` and ``alpha == 0``.
    ``nondomination_ok`` says whether ``F(x_k)`` fails to dominate
    ``F(x_{k+1})``; it is ``None`` on the terminal record. ``weight`` is the
    ``w`` whose scalarization drove the step, which differs from the
    configured one only on tie-break steps.
    """

    k: int
    x: np.ndarray
    value: Interval
    grad: IntervalVector
    direction: Optional[np.ndarray] = None
    alpha: float = 0.0
    nondomination_ok: Optional[bool] = None
    weight: Optional[float] = None

    @property
    def grad_norm(self) -> float:
        return vector_norm(self.grad)


@dataclass
class SolveTrace:
    iterations: List[IterationRecord] = field(default_factory=list)
    status: Optional[Status] = None
    contraction_ratios: List[float] = field(default_factory=list)

    @property
    def x(self) -> np.ndarray:
        return self.iterations[-1].x

    @property
    def value(self) -> Interval:
        return self.iterations[-1].value

    @property
    def n_iter(self) -> int:
        """Number of steps taken (records minus the initial point)."""
        return len(self.iterations) - 1

    @property
    def converged(self) -> bool:
        return self.status is Status.STATIONARY

    def _finish(self, status: Status) -> None:
        if self.status is not None:
            raise RuntimeError("trace status already set")
        self.status = status


DirectionOracle = Callable[[np.ndarray, IntervalVector], np.ndarray]
Fallback = Callable[[IntervalVector], Tuple[np.ndarray, WeightPair]]


def clip_alpha_to_box(x, d, box, alpha_max: float) -> float:
    """Largest ``alpha <= alpha_max`` keeping ``x + alpha * d`` inside ``box``.

    Returns 0 when ``x`` sits on a face and ``d`` points outward.
    """
    alpha = float(alpha_max)
    if box is None:
        return alpha
    for xi, di, (a, b) in zip(x, d, box):
        if di > 0:
            alpha = min(alpha, (b - xi) / di)
        elif di < 0:
            alpha = min(alpha, (a - xi) / di)
    return max(alpha, 0.0)


def _golden(phi, a: float, b: float, tol: float, max_iter: int):
    c = b - _INVPHI * (b - a)
    e = a + _INVPHI * (b - a)
    fc, fe = phi(c), phi(e)
    for _ in range(max_iter):
        if b - a <= tol * b:
            break
        if fc < fe:
            b, e, fe = e, c, fc
            c = b - _INVPHI * (b - a)
            fc = phi(c)
        else:
            a, c, fc = c, e, fe
            e = a + _INVPHI * (b - a)
            fe = phi(e)
    return (c, fc) if fc < fe else (e, fe)


def line_search_argeff(
    f: Ivf, x, d, wp: WeightPair, cfg: SolverConfig
) -> float:
    """Step length along ``d`` minimizing ``phi(a) = w * f_lo + (1 - w) * f_hi``.

    The admissible range ``(0, max_alpha]`` is first shrunk so that the ray
    stays inside ``f.domain_box``. The first trial step moves the largest
    coordinate of ``x`` by one unit; it is doubled while ``phi`` keeps
    falling, or halved until ``phi`` drops below ``phi(0)``, which brackets
    the first local minimizer along the ray. Golden-section search then
    shrinks the bracket to a relative width of ``ls_tol``.

    If no sampled step lowers ``phi``, the best sampled step is returned
    anyway; callers detect this by comparing values.
    """
    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    if not np.any(d):
        raise ZeroDirection("line search needs a nonzero direction")
    ls = cfg.line_search
    alpha_max = clip_alpha_to_box(x, d, f.domain_box, ls.max_alpha)
    if alpha_max <= 0.0:
        raise DegenerateBracket(f"no room to move from {x} along {d} inside the box")

    def phi(alpha: float) -> float:
        # Overflow to inf is reported by the caller's finiteness check.
        with np.errstate(over="ignore"):
            point = x + alpha * d
        return wp.scalarize(f(point))

    phi0 = phi(0.0)
    alpha = min(alpha_max, 1.0 / float(np.max(np.abs(d))))
    val = phi(alpha)

    if val < phi0:
        prev = 0.0
        for _ in range(ls.max_ls_iter):
            if alpha >= alpha_max:
                break
            nxt = min(2.0 * alpha, alpha_max)
            nxt_val = phi(nxt)
            if nxt_val >= val:
                best = _golden(phi, prev, nxt, ls.ls_tol, ls.max_ls_iter)
                return best[0] if best[1] < val else alpha
            prev, alpha, val = alpha, nxt, nxt_val
        # Still descending at alpha_max: the minimizer is at or near the end.
        best = _golden(phi, prev, alpha_max, ls.ls_tol, ls.max_ls_iter)
        return best[0] if best[1] < val else alpha_max

    best_alpha, best_val = alpha, val
    floor = alpha * ls.ls_tol
    while alpha > floor:
        alpha *= 0.5
        val = phi(alpha)
        if val < phi0:
            best = _golden(phi, 0.0, 2.0 * alpha, ls.ls_tol, ls.max_ls_iter)
            return best[0] if best[1] < val else alpha
        if val < best_val:
            best_alpha, best_val = alpha, val
    return best_alpha


def w_gradient_oracle(wp: WeightPair) -> DirectionOracle:
    def oracle(x: np.ndarray, grad: IntervalVector) -> np.ndarray:
        return -w_map(grad, wp)

    return oracle


def _direction(x, grad, oracle, fallback, wp):
    d = np.asarray(oracle(x, grad), dtype=float)
    if not np.any(d) and fallback is not None:
        d, wp = fallback(grad)
    if not np.all(np.isfinite(d)):
        raise OracleContractViolation(f"non-finite direction {d} at {x}")
    if not is_efficient_direction_candidate(d, grad):
        raise OracleContractViolation(f"[0, 0] dominates d^T grad for d={d} at x={x}")
    return d, wp


def _step(f: Ivf, x, d, wp: WeightPair, cfg: SolverConfig):
    alpha = line_search_argeff(f, x, d, wp, cfg)
    with np.errstate(over="ignore"):
        x_new = x + alpha * d
    if not np.all(np.isfinite(x_new)):
        raise NonFiniteIterate(f"iterate left the representable range: {x_new}")
    return x_new, f(x_new), alpha


def _run(
    f: Ivf,
    cfg: SolverConfig,
    oracle: DirectionOracle,
    zero_fallback: Optional[Fallback] = None,
    stall_fallback: Optional[Fallback] = None,
) -> SolveTrace:
    x = np.array(cfg.x0, dtype=float)
    if len(x) != f.dim:
        raise ValueError(f"x0 has length {len(x)}, function dim {f.dim}")
    if not f.in_domain(x):
        raise ValueError(f"x0 {x} lies outside the domain box {f.domain_box}")
    ref = None if cfg.reference is None else np.asarray(cfg.reference, dtype=float)
    trace = SolveTrace()

    def stop(k, x, value, grad):
        trace.iterations.append(IterationRecord(k, x, value, grad))
        stationary = is_stationary(grad, cfg.grad_tol)
        trace._finish(Status.STATIONARY if stationary else Status.STEP_BELOW_TOL)

    k = 0
    value = f(x)
    grad = gh_gradient(f, x, h=cfg.fd_step)
    while True:
        if is_stationary(grad, cfg.grad_tol):
            trace.iterations.append(IterationRecord(k, x, value, grad))
            trace._finish(Status.STATIONARY)
            break
        if k == cfg.max_iter:
            trace.iterations.append(IterationRecord(k, x, value, grad))
            trace._finish(Status.MAX_ITER)
            break

        d, wp = _direction(x, grad, oracle, zero_fallback, cfg.weights)
        x_new, new_value, alpha = _step(f, x, d, wp, cfg)
        if wp.scalarize(new_value) >= wp.scalarize(value) and stall_fallback is not None:
            # The endpoint functions have a kink here and -W(grad) only
            # looks like descent from one side.
            alt_d, alt_wp = stall_fallback(grad)
            if np.any(alt_d):
                d, wp = alt_d, alt_wp
                x_new, new_value, alpha = _step(f, x, d, wp, cfg)

        ok = not dominates(value, new_value)
        trace.iterations.append(IterationRecord(k, x, value, grad, d, alpha, ok, wp.w))
        if ref is not None:
            den = float(np.linalg.norm(x - ref))
            if den > 0:
                trace.contraction_ratios.append(float(np.linalg.norm(x_new - ref)) / den)

        step = float(np.linalg.norm(x_new - x))
        x, value = x_new, new_value
        grad = gh_gradient(f, x, h=cfg.fd_step)
        k += 1
        if step < cfg.step_tol:
            stop(k, x, value, grad)
            break

    logger.debug("solve finished: %s after %d steps at %s", trace.status, trace.n_iter, trace.x)
    return trace


def solve_general(f: Ivf, oracle: DirectionOracle, cfg: SolverConfig) -> SolveTrace:
    """General efficient-direction method with a caller-supplied oracle.

    Each direction must satisfy ``[0, 0]`` not dominating ``d^T (.) grad``;
    otherwise :class:`OracleContractViolation` is raised. The stopping test is
    the per-coordinate one: zero inside every partial gH-derivative.
    """
    return _run(f, cfg, oracle)


def solve_w_gradient(f: Ivf, cfg: SolverConfig) -> SolveTrace:
    """Iterate ``x <- x - alpha * W(grad F(x))`` until stationary.

    Two one-step tie-breaks keep the iteration moving:

    * if ``W(grad)`` vanishes at a non-stationary point, the weight is
      nudged by 1e-3;
    * if the step along ``-W(grad)`` does not lower the scalarized value
      (a kink in an endpoint function), the step is redone with equal
      weights ``w = 0.5``.

    Records carry the weight actually used for each step.
    """
    wp = cfg.weights
    mid = WeightPair(0.5)

    def nudge(grad: IntervalVector):
        w = wp.w + _W_NUDGE if wp.w + _W_NUDGE <= 1.0 else wp.w - _W_NUDGE
        alt = WeightPair(w)
        return -w_map(grad, alt), alt

    def equal_weights(grad: IntervalVector):
        if wp == mid:
            return np.zeros(len(grad)), wp
        return -w_map(grad, mid), mid

    return _run(f, cfg, w_gradient_oracle(wp), zero_fallback=nudge, stall_fallback=equal_weights)
