"""Built-in test problems with analytic gH-gradients."""

from __future__ import annotations

import numpy as np

from .calculus import Ivf
from .interval import Interval, IntervalVector, add, scalar_mul

__all__ = [
    "BUILTINS",
    "get_problem",
    "quadratic_1d",
    "separable_quadratic_2d",
    "degenerate_paraboloid",
    "linear_ivf",
    "SWEEPS",
]

_A2 = Interval(1.0, 2.0)
_A1 = Interval(-8.0, 0.0)
_A0 = Interval(3.0, 25.0)
_G2 = Interval(2.0, 4.0)


def quadratic_1d() -> Ivf:
    """``[1,2] x^2 + [-8,0] x + [3,25]`` on ``[-3, 7]``.

    Every point of ``[0, 4]`` is efficient. The gH-gradient is
    ``[2,4] x + [-8,0]``.
    """

    def func(x):
        t = x[0]
        return add(add(scalar_mul(t * t, _A2), scalar_mul(t, _A1)), _A0)

    def grad(x):
        return IntervalVector([add(scalar_mul(x[0], _G2), _A1)])

    return Ivf(1, func, grad, [(-3.0, 7.0)], name="example-5.1")


_B1 = Interval(2.0, 6.0)
_B2 = Interval(5.0, 7.0)
_B0 = Interval(5.0, 12.0)
_D1 = Interval(4.0, 12.0)
_D2 = Interval(10.0, 14.0)


def separable_quadratic_2d() -> Ivf:
    """``[2,6](x1-2)^2 + [5,7](x2-3)^2 + [5,12]`` on ``[0,6]^2``.

    The unique efficient point is ``(2, 3)``.
    """

    def func(x):
        u, v = x[0] - 2.0, x[1] - 3.0
        return add(add(scalar_mul(u * u, _B1), scalar_mul(v * v, _B2)), _B0)

    def grad(x):
        return IntervalVector(
            [scalar_mul(x[0] - 2.0, _D1), scalar_mul(x[1] - 3.0, _D2)]
        )

    return Ivf(2, func, grad, [(0.0, 6.0), (0.0, 6.0)], name="example-5.2")


def degenerate_paraboloid() -> Ivf:
    """``x^2 + y^2`` as a degenerate interval-valued function."""

    def func(x):
        v = float(x[0] * x[0] + x[1] * x[1])
        return Interval(v, v)

    def grad(x):
        return IntervalVector.from_points(2.0 * np.asarray(x, dtype=float))

    return Ivf(2, func, grad, None, name="paraboloid")


def linear_ivf(coefficients) -> Ivf:
    """``x1 (.) A1 + ... + xn (.) An`` for intervals ``A_i``."""
    coeffs = tuple(coefficients)

    def func(x):
        total = Interval(0.0, 0.0)
        for xi, a in zip(x, coeffs):
            total = add(total, scalar_mul(xi, a))
        return total

    return Ivf(len(coeffs), func, name="linear")


BUILTINS = {
    "example-5.1": quadratic_1d,
    "example-5.2": separable_quadratic_2d,
    "paraboloid": degenerate_paraboloid,
}

# Weights and starting points of the standard sweeps for each problem.
SWEEPS = {
    "example-5.1": (
        (0.0, 0.2, 0.4, 0.5, 0.7, 0.9),
        ((-2.0,), (-0.5,), (6.0,)),
    ),
    "example-5.2": (
        (0.1, 0.3, 0.4, 0.6, 0.9, 1.0),
        ((0.0, 6.0), (5.0, 2.0), (2.5, 2.5)),
    ),
}


def get_problem(name: str) -> Ivf:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown problem {name!r}; choose from {sorted(BUILTINS)}") from None
