"""Least squares on interval data, solved with the W-gH-gradient method.

The error of a parameter vector ``beta`` is the interval

    E(beta) = sum_k (H(X_k; beta) -gH Y_k) (.) (H(X_k; beta) -gH Y_k)

(Moore sum of self-products of gH-residuals). Two gradients are offered:

* :func:`error_gradient`, the exact gH-gradient of ``E``: per parameter,
  ``[min, max]`` of the derivatives of the two endpoint functions. The
  fitter uses this one.
* :func:`error_gradient_moore`, the interval expression
  ``2 (.) sum_k (H(X_k) -gH Y_k) (.) D_i H(X_k)``. It is an enclosure, not
  the derivative, and is kept for comparison.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .calculus import Ivf, WeightPair
from .interval import (
    ONE,
    Interval,
    IntervalVector,
    add,
    div,
    gh_difference,
    mul,
    scalar_mul,
)
from .solver import LineSearchConfig, SolverConfig, SolveTrace, solve_w_gradient

__all__ = [
    "IntervalDataset",
    "ModelKind",
    "ModelSpec",
    "FitResult",
    "model_eval",
    "model_partial",
    "model_partial_moore",
    "error_eval",
    "error_gradient",
    "error_gradient_moore",
    "error_ivf",
    "fit",
    "fit_config",
    "FIT_GRAD_TOL",
    "FIT_MAX_ALPHA",
    "FIT_MAX_ITER",
]

# exp() argument clamp; far outside any fitted region.
_EXP_CLAMP = 700.0


@dataclass(frozen=True)
class IntervalDataset:
    """Pairs ``(X_k, Y_k)`` of interval inputs and outputs."""

    rows: Tuple[Tuple[Interval, Interval], ...]

    def __post_init__(self):
        rows = tuple((_iv(x), _iv(y)) for x, y in self.rows)
        if not rows:
            raise ValueError("dataset needs at least one row")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_bounds(cls, bounds: Sequence[Sequence[float]]) -> "IntervalDataset":
        """Build from rows ``(x_lo, x_hi, y_lo, y_hi)``."""
        return cls(tuple((Interval(r[0], r[1]), Interval(r[2], r[3])) for r in bounds))

    def __len__(self) -> int:
        return len(self.rows)

    @cached_property
    def bounds(self) -> np.ndarray:
        """``(n, 4)`` array of ``x_lo, x_hi, y_lo, y_hi``."""
        return np.array([(x.lo, x.hi, y.lo, y.hi) for x, y in self.rows])

    @property
    def xs(self) -> List[Interval]:
        return [x for x, _ in self.rows]

    @property
    def ys(self) -> List[Interval]:
        return [y for _, y in self.rows]


def _iv(v) -> Interval:
    return v if isinstance(v, Interval) else Interval(*v)


class ModelKind(enum.Enum):
    POLYNOMIAL = "poly"
    LOGISTIC = "logistic"


@dataclass(frozen=True)
class ModelSpec:
    """``POLYNOMIAL``: ``b1 C + b2 X + b3 X(.)X``.
    ``LOGISTIC``: ``1 / (1 + exp(-(b1 C + b2 X)))``.
    """

    kind: ModelKind
    c: Interval

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        object.__setattr__(self, "c", _iv(self.c))

    @classmethod
    def polynomial(cls, c) -> "ModelSpec":
        return cls(ModelKind.POLYNOMIAL, c)

    @classmethod
    def logistic(cls, c) -> "ModelSpec":
        return cls(ModelKind.LOGISTIC, c)

    @property
    def param_dim(self) -> int:
        return 3 if self.kind is ModelKind.POLYNOMIAL else 2


def _check_beta(m: ModelSpec, beta) -> np.ndarray:
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (m.param_dim,):
        raise ValueError(f"{m.kind.value} model takes {m.param_dim} parameters, got {beta.shape}")
    return beta


def _logistic_arg(m: ModelSpec, x: Interval, beta) -> Interval:
    return add(scalar_mul(beta[0], m.c), scalar_mul(beta[1], x))


def _one_plus_exp_neg(s: Interval) -> Interval:
    lo = math.exp(min(-s.hi, _EXP_CLAMP))
    hi = math.exp(min(-s.lo, _EXP_CLAMP))
    return add(ONE, Interval(lo, hi))


def model_eval(m: ModelSpec, x: Interval, beta) -> Interval:
    beta = _check_beta(m, beta)
    if m.kind is ModelKind.POLYNOMIAL:
        return add(
            add(scalar_mul(beta[0], m.c), scalar_mul(beta[1], x)),
            scalar_mul(beta[2], mul(x, x)),
        )
    return div(ONE, _one_plus_exp_neg(_logistic_arg(m, x, beta)))


def model_partial(m: ModelSpec, x: Interval, beta, i: int) -> Interval:
    """Partial gH-derivative of the model in ``beta[i]``.

    ``[min, max]`` of the derivatives of the two endpoint functions. For the
    polynomial model this is exactly ``{C, X, X(.)X}[i]``. For the logistic
    model it is ``sigma'(S) * {C, X}[i]`` evaluated endpoint by endpoint,
    which differs from :func:`model_partial_moore`.
    """
    beta = _check_beta(m, beta)
    if not 0 <= i < m.param_dim:
        raise IndexError(f"parameter index {i} out of range")
    if m.kind is ModelKind.POLYNOMIAL:
        return (m.c, x, mul(x, x))[i]
    b = _model_bounds(m, np.array([x.lo]), np.array([x.hi]), beta)
    d_lo, d_hi = b.glo[0, i], b.ghi[0, i]
    return Interval(min(d_lo, d_hi), max(d_lo, d_hi))


def model_partial_moore(m: ModelSpec, x: Interval, beta, i: int) -> Interval:
    """Model partials in the literal Moore form of the least-squares method.

    Polynomial: ``{C, X, X(.)X}[i]``. Logistic:
    ``1 / (1 + exp(-S))^2 (.) {C, X}[i]``, square as a Moore self-product.
    The logistic form lacks the ``exp(-S)`` factor of the chain rule, so it
    only coincides with :func:`model_partial` where ``S`` is ``[0, 0]``.
    """
    beta = _check_beta(m, beta)
    if not 0 <= i < m.param_dim:
        raise IndexError(f"parameter index {i} out of range")
    if m.kind is ModelKind.POLYNOMIAL:
        return (m.c, x, mul(x, x))[i]
    inv = div(ONE, _one_plus_exp_neg(_logistic_arg(m, x, beta)))
    return mul(mul(inv, inv), (m.c, x)[i])


@dataclass
class _Bounds:
    """Endpoint values ``lo, hi`` (shape ``(n,)``) and their gradients in
    beta ``glo, ghi`` (shape ``(n, l)``)."""

    lo: np.ndarray
    hi: np.ndarray
    glo: np.ndarray
    ghi: np.ndarray


def _scaled(b: float, alo: np.ndarray, ahi: np.ndarray):
    # b (.) A and d/db of its endpoints.
    if b >= 0:
        return b * alo, b * ahi, alo, ahi
    return b * ahi, b * alo, ahi, alo


def _sum_terms(terms, n: int) -> _Bounds:
    lo = np.zeros(n)
    hi = np.zeros(n)
    glo = np.empty((n, len(terms)))
    ghi = np.empty((n, len(terms)))
    for j, (tlo, thi, dlo, dhi) in enumerate(terms):
        lo = lo + tlo
        hi = hi + thi
        glo[:, j] = dlo
        ghi[:, j] = dhi
    return _Bounds(lo, hi, glo, ghi)


def _self_product(lo: np.ndarray, hi: np.ndarray):
    p = np.stack([lo * lo, lo * hi, hi * hi])
    return p.min(axis=0), p.max(axis=0)


def _model_bounds(m: ModelSpec, xlo: np.ndarray, xhi: np.ndarray, beta) -> _Bounds:
    n = len(xlo)
    clo = np.full(n, m.c.lo)
    chi = np.full(n, m.c.hi)
    if m.kind is ModelKind.POLYNOMIAL:
        qlo, qhi = _self_product(xlo, xhi)
        return _sum_terms(
            [_scaled(beta[0], clo, chi), _scaled(beta[1], xlo, xhi), _scaled(beta[2], qlo, qhi)],
            n,
        )
    s = _sum_terms([_scaled(beta[0], clo, chi), _scaled(beta[1], xlo, xhi)], n)
    # H = [sigma(s_lo), sigma(s_hi)]; sigma' = sigma * (e * sigma) with e = exp(-s).
    arg_lo = -s.lo
    arg_hi = -s.hi
    e_lo = np.exp(np.minimum(arg_lo, _EXP_CLAMP))
    e_hi = np.exp(np.minimum(arg_hi, _EXP_CLAMP))
    h_lo = 1.0 / (1.0 + e_lo)
    h_hi = 1.0 / (1.0 + e_hi)
    slope_lo = np.where(arg_lo < _EXP_CLAMP, h_lo * (e_lo * h_lo), 0.0)
    slope_hi = np.where(arg_hi < _EXP_CLAMP, h_hi * (e_hi * h_hi), 0.0)
    return _Bounds(h_lo, h_hi, s.glo * slope_lo[:, None], s.ghi * slope_hi[:, None])


def _select(mask, a, b):
    return np.where(mask[:, None], a, b) if a.ndim == 2 else np.where(mask, a, b)


def _error_bounds(m: ModelSpec, data: IntervalDataset, beta) -> _Bounds:
    """Per-row endpoints of ``r (.) r`` and their beta-gradients.

    Where branches of a min/max tie exactly, the lower endpoint takes the
    smallest slope over the tied branches and the upper endpoint the
    largest, so the result brackets both one-sided derivatives.
    """
    arr = data.bounds
    h = _model_bounds(m, arr[:, 0], arr[:, 1], beta)
    a = h.lo - arr[:, 2]
    b = h.hi - arr[:, 3]
    first = a <= b
    r_lo, r_hi = np.where(first, a, b), np.where(first, b, a)
    # Residual endpoints ordered with their gradients; when a == b the
    # swapped pairing is an equally valid branch.
    pairings = [
        (_select(first, h.glo, h.ghi), _select(first, h.ghi, h.glo)),
        (_select(first, h.ghi, h.glo), _select(first, h.glo, h.ghi)),
    ]
    vals, grads = [], []
    for g_rlo, g_rhi in pairings:
        vals += [r_lo * r_lo, r_lo * r_hi, r_hi * r_hi]
        grads += [
            2.0 * r_lo[:, None] * g_rlo,
            r_hi[:, None] * g_rlo + r_lo[:, None] * g_rhi,
            2.0 * r_hi[:, None] * g_rhi,
        ]
    tied_pairing = (a == b)[None, :]
    valid = np.concatenate([np.ones((3, len(a)), bool), np.repeat(tied_pairing, 3, axis=0)])
    vals = np.stack(vals)
    grads = np.stack(grads)
    lo = vals.min(axis=0)
    hi = vals.max(axis=0)
    at_lo = (valid & (vals == lo))[:, :, None]
    at_hi = (valid & (vals == hi))[:, :, None]
    glo = np.where(at_lo, grads, np.inf).min(axis=0)
    ghi = np.where(at_hi, grads, -np.inf).max(axis=0)
    return _Bounds(lo, hi, glo, ghi)


def error_eval(m: ModelSpec, data: IntervalDataset, beta) -> Interval:
    """Moore sum over rows of the self-product of the gH-residual."""
    beta = _check_beta(m, beta)
    e = _error_bounds(m, data, beta)
    return Interval(math.fsum(e.lo), math.fsum(e.hi))


def error_gradient(m: ModelSpec, data: IntervalDataset, beta) -> IntervalVector:
    """Exact gH-gradient of :func:`error_eval`.

    Each component is ``[min, max]`` of the partial derivatives of the lower
    and upper error endpoints, obtained by the chain rule through the Moore
    operations. On branch switches of a min/max, one side's slope is used.
    """
    beta = _check_beta(m, beta)
    e = _error_bounds(m, data, beta)
    g_lo = e.glo.sum(axis=0)
    g_hi = e.ghi.sum(axis=0)
    return IntervalVector(
        Interval(min(a, b), max(a, b)) for a, b in zip(g_lo, g_hi)
    )


def error_gradient_moore(m: ModelSpec, data: IntervalDataset, beta) -> IntervalVector:
    """``2 (.) sum_k (H(X_k) -gH Y_k) (.) D_i H(X_k)`` in interval arithmetic.

    Uses :func:`model_partial_moore`. For the polynomial model the result
    encloses :func:`error_gradient` but is usually much wider.
    """
    beta = _check_beta(m, beta)
    res = [gh_difference(model_eval(m, x, beta), y) for x, y in data.rows]
    comps = []
    for i in range(m.param_dim):
        total = Interval(0.0, 0.0)
        for r, (x, _) in zip(res, data.rows):
            total = add(total, mul(r, model_partial_moore(m, x, beta, i)))
        comps.append(scalar_mul(2.0, total))
    return IntervalVector(comps)


def error_ivf(m: ModelSpec, data: IntervalDataset) -> Ivf:
    """The error as an unconstrained :class:`Ivf` with the analytic gradient."""
    return Ivf(
        m.param_dim,
        lambda b: error_eval(m, data, b),
        lambda b: error_gradient(m, data, b),
        None,
        name=f"{m.kind.value}-error",
    )


@dataclass
class FitResult:
    beta_hat: np.ndarray
    trace: SolveTrace


# Saturated logistic models have gradients near 1e-12 long before the
# fit is done, so the fitter defaults are much tighter than the solver's.
FIT_GRAD_TOL = 1e-12
FIT_MAX_ALPHA = 1e8
FIT_MAX_ITER = 2000


def fit_config(beta0, wp: WeightPair, **overrides) -> SolverConfig:
    """Solver settings used by :func:`fit` unless a config is passed."""
    overrides.setdefault("grad_tol", FIT_GRAD_TOL)
    overrides.setdefault("max_iter", FIT_MAX_ITER)
    overrides.setdefault("line_search", LineSearchConfig(max_alpha=FIT_MAX_ALPHA))
    return SolverConfig(beta0, wp, **overrides)


def fit(
    m: ModelSpec,
    data: IntervalDataset,
    beta0,
    wp: WeightPair,
    cfg: Optional[SolverConfig] = None,
) -> FitResult:
    """Minimize the interval error from ``beta0`` with weights ``wp``.

    ``cfg`` defaults to :func:`fit_config`; its ``x0`` and ``weights`` are
    always replaced by ``beta0`` and ``wp``.
    """
    beta0 = _check_beta(m, beta0)
    if len(data) < m.param_dim:
        warnings.warn(
            f"{len(data)} rows for {m.param_dim} parameters; the fit is underdetermined",
            stacklevel=2,
        )
    cfg = fit_config(beta0, wp) if cfg is None else cfg.with_(x0=beta0, weights=wp)
    trace = solve_w_gradient(error_ivf(m, data), cfg)
    return FitResult(np.array(trace.x), trace)
