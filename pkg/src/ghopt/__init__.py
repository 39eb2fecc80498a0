"""Interval optimization with generalized-Hukuhara gradients.

The pieces, bottom up:

* :mod:`ghopt.interval`: intervals, Moore arithmetic, gH-difference, dominance.
* :mod:`ghopt.calculus`: interval-valued functions, gH-gradients, the W map.
* :mod:`ghopt.solver`: efficient-direction descent and the W-gH-gradient method.
* :mod:`ghopt.least_squares`: interval least-squares fits.
* :mod:`ghopt.dataio` and :mod:`ghopt.cli`: files and the command line.
"""

from .calculus import (
    DomainViolation,
    Ivf,
    WeightPair,
    gh_gradient,
    is_efficient_direction_candidate,
    is_stationary,
    partial_gh_derivative,
    w_map,
)
from .interval import (
    ONE,
    ZERO,
    DivisorContainsZero,
    Dominance,
    Interval,
    IntervalError,
    IntervalOverflow,
    IntervalVector,
    InvalidInterval,
    LengthMismatch,
    compare,
    dominates,
    gh_difference,
    inner_product,
    strictly_dominates,
)
from .least_squares import FitResult, IntervalDataset, ModelSpec, error_eval, error_gradient, fit
from .problems import get_problem
from .solver import (
    LineSearchConfig,
    SolverConfig,
    SolveTrace,
    Status,
    line_search_argeff,
    solve_general,
    solve_w_gradient,
)

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "IntervalVector",
    "Dominance",
    "IntervalError",
    "InvalidInterval",
    "DivisorContainsZero",
    "LengthMismatch",
    "IntervalOverflow",
    "DomainViolation",
    "ZERO",
    "ONE",
    "compare",
    "dominates",
    "strictly_dominates",
    "gh_difference",
    "inner_product",
    "Ivf",
    "WeightPair",
    "gh_gradient",
    "partial_gh_derivative",
    "w_map",
    "is_stationary",
    "is_efficient_direction_candidate",
    "LineSearchConfig",
    "SolverConfig",
    "SolveTrace",
    "Status",
    "line_search_argeff",
    "solve_general",
    "solve_w_gradient",
    "IntervalDataset",
    "ModelSpec",
    "FitResult",
    "error_eval",
    "error_gradient",
    "fit",
    "get_problem",
]
