"""Interval-valued functions on R^n and their gH-derivatives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .interval import (
    ZERO,
    Interval,
    IntervalError,
    IntervalVector,
    LengthMismatch,
    dominates,
    inner_product,
)

__all__ = [
    "Ivf",
    "WeightPair",
    "DomainViolation",
    "default_fd_step",
    "partial_gh_derivative",
    "gh_gradient",
    "w_map",
    "is_stationary",
    "is_efficient_direction_candidate",
]

_CBRT_EPS = float(np.finfo(float).eps) ** (1.0 / 3.0)


class DomainViolation(IntervalError):
    pass


@dataclass(frozen=True)
class Ivf:
    """An interval-valued function ``F: R^n -> I(R)``.

    ``func`` maps a point (1-d float array of length ``dim``) to an
    :class:`Interval`. The endpoint functions are read off its result, so no
    separate lower/upper callables are needed. ``gradient``, when given, is
    the analytic gH-gradient; ``domain_box`` is a sequence of per-coordinate
    ``(min, max)`` bounds.

    ``func`` and ``gradient`` must be pure.
    """

    dim: int
    func: Callable[[np.ndarray], Interval]
    gradient: Optional[Callable[[np.ndarray], IntervalVector]] = None
    domain_box: Optional[Sequence[tuple]] = None
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.domain_box is not None:
            box = tuple((float(a), float(b)) for a, b in self.domain_box)
            if len(box) != self.dim:
                raise LengthMismatch(f"box has {len(box)} bounds for dim {self.dim}")
            if any(a > b for a, b in box):
                raise ValueError(f"empty box {box}")
            object.__setattr__(self, "domain_box", box)

    def __call__(self, x) -> Interval:
        return self.func(np.asarray(x, dtype=float))

    def lower(self, x) -> float:
        return self(x).lo

    def upper(self, x) -> float:
        return self(x).hi

    def in_domain(self, x) -> bool:
        if self.domain_box is None:
            return True
        return all(a <= xi <= b for xi, (a, b) in zip(x, self.domain_box))

    def without_gradient(self) -> "Ivf":
        """Same function, forcing numeric differentiation."""
        return Ivf(self.dim, self.func, None, self.domain_box, self.name)


@dataclass(frozen=True)
class WeightPair:
    """Weights ``(w, 1 - w)`` on the lower and upper endpoint."""

    w: float

    def __post_init__(self):
        w = float(self.w)
        if not 0.0 <= w <= 1.0:
            raise ValueError(f"weight must lie in [0, 1], got {w}")
        object.__setattr__(self, "w", w)

    @property
    def w_prime(self) -> float:
        return 1.0 - self.w

    def scalarize(self, a: Interval) -> float:
        return self.w * a.lo + self.w_prime * a.hi


def default_fd_step(xi: float) -> float:
    return _CBRT_EPS * max(1.0, abs(xi))


def _numeric_partial(f: Ivf, x: np.ndarray, i: int, h: float) -> Interval:
    xp = x.copy()
    xm = x.copy()
    xp[i] += h
    xm[i] -= h
    if f.domain_box is not None:
        a, b = f.domain_box[i]
        if xm[i] < a or xp[i] > b:
            raise DomainViolation(
                f"central difference at x[{i}]={x[i]} with h={h} leaves [{a}, {b}]"
            )
    fp = f(xp)
    fm = f(xm)
    # Central differences of both endpoint functions; at kinks of the
    # endpoint functions this silently returns the averaged slope.
    d_lo = (fp.lo - fm.lo) / (2.0 * h)
    d_hi = (fp.hi - fm.hi) / (2.0 * h)
    return Interval(min(d_lo, d_hi), max(d_lo, d_hi))


def partial_gh_derivative(
    f: Ivf, x, i: int, h: Optional[float] = None, numeric: bool = False
) -> Interval:
    """The ``i``-th partial gH-derivative of ``f`` at ``x``.

    Uses the analytic gradient when ``f`` has one (unless ``numeric``), else
    the interval ``[min, max]`` of central differences of the two endpoint
    functions with step ``h`` (default ``cbrt(eps) * max(1, |x_i|)``).
    """
    x = np.array(x, dtype=float)
    if not 0 <= i < f.dim:
        raise IndexError(f"coordinate {i} out of range for dim {f.dim}")
    if f.gradient is not None and not numeric:
        return f.gradient(x)[i]
    if h is None:
        h = default_fd_step(x[i])
    if h <= 0:
        raise ValueError("finite-difference step must be positive")
    return _numeric_partial(f, x, i, h)


def gh_gradient(f: Ivf, x, h: Optional[float] = None, numeric: bool = False) -> IntervalVector:
    x = np.array(x, dtype=float)
    if len(x) != f.dim:
        raise LengthMismatch(f"point has length {len(x)}, function dim {f.dim}")
    if f.gradient is not None and not numeric:
        g = f.gradient(x)
        if not isinstance(g, IntervalVector):
            g = IntervalVector(g)
        return g
    return IntervalVector(partial_gh_derivative(f, x, i, h, numeric=True) for i in range(f.dim))


def w_map(v: Sequence[Interval], wp: WeightPair) -> np.ndarray:
    """Componentwise ``w * lo + (1 - w) * hi``."""
    return np.array([wp.w * a.lo + wp.w_prime * a.hi for a in v])


def is_stationary(g: Sequence[Interval], tol: float = 1e-6) -> bool:
    """True when every component of ``g`` contains 0, up to ``tol``."""
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    return all(a.lo <= tol and a.hi >= -tol for a in g)


def is_efficient_direction_candidate(d: Sequence[float], g: Sequence[Interval]) -> bool:
    """True when ``[0, 0]`` does not dominate ``d^T (.) g``."""
    if len(d) != len(g):
        raise LengthMismatch(f"direction has length {len(d)}, gradient {len(g)}")
    return not dominates(ZERO, inner_product(d, g))
