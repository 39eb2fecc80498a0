import numpy as np
import pytest

from ghopt.calculus import WeightPair, gh_gradient, is_stationary
from ghopt.dataio import shipped_dataset
from ghopt.interval import Interval, IntervalVector, gh_difference, mul
from ghopt.least_squares import (
    IntervalDataset,
    ModelKind,
    ModelSpec,
    error_eval,
    error_gradient,
    error_gradient_moore,
    error_ivf,
    fit,
    fit_config,
    model_eval,
    model_partial,
    model_partial_moore,
)
from ghopt.solver import SolverConfig

POLY = ModelSpec.polynomial((1.70, 12.00))
LOGI = ModelSpec.logistic((1.30, 3.40))


def one_row(x, y):
    return IntervalDataset(((Interval(*x), Interval(*y)),))


class TestDataset:
    def test_from_bounds(self):
        d = IntervalDataset.from_bounds([(0, 1, 2, 3), (1, 2, 3, 4)])
        assert len(d) == 2 and d.xs[1] == Interval(1, 2) and d.ys[0] == Interval(2, 3)
        assert d.bounds.shape == (2, 4)

    def test_empty(self):
        with pytest.raises(ValueError):
            IntervalDataset(())

    def test_underdetermined_warns(self):
        d = one_row((1, 2), (0, 1))
        with pytest.warns(UserWarning, match="underdetermined"):
            fit(POLY, d, (0, 0, 0), WeightPair(0.5), SolverConfig((0, 0, 0), max_iter=1))


class TestModelSpec:
    def test_dims(self):
        assert POLY.param_dim == 3 and LOGI.param_dim == 2
        assert ModelSpec("logistic", (0, 1)).kind is ModelKind.LOGISTIC

    def test_beta_length(self):
        with pytest.raises(ValueError):
            model_eval(POLY, Interval(0, 1), (1, 2))


class TestModelEval:
    def test_constant_term(self):
        assert model_eval(POLY, Interval(-5, 3), (1, 0, 0)) == Interval(1.70, 12.00)

    def test_self_product_term(self):
        assert model_eval(POLY, Interval(-1, 2), (0, 0, 1)) == Interval(-2, 4)

    def test_logistic_at_zero(self):
        assert model_eval(LOGI, Interval(-3, 8), (0, 0)) == Interval(0.5, 0.5)

    @pytest.mark.parametrize("beta", [(800, 0), (-800, 0), (3, -2), (0.1, 50)])
    def test_logistic_inside_unit_interval(self, beta):
        h = model_eval(LOGI, Interval(-2.7, 0.21), beta)
        assert 0 <= h.lo <= h.hi <= 1


class TestModelPartials:
    def test_polynomial(self):
        assert model_partial(POLY, Interval(1, 2), (0.3, -1, 2), 0) == POLY.c
        assert model_partial(POLY, Interval(1, 2), (0.3, -1, 2), 2) == Interval(1, 4)

    def test_logistic_at_zero(self):
        p = model_partial(LOGI, Interval(1, 1), (0, 0), 1)
        assert p == Interval(0.25, 0.25)
        assert model_partial_moore(LOGI, Interval(1, 1), (0, 0), 1) == Interval(0.25, 0.25)

    def test_index_range(self):
        with pytest.raises(IndexError):
            model_partial(LOGI, Interval(0, 1), (0, 0), 2)
        with pytest.raises(IndexError):
            model_partial_moore(POLY, Interval(0, 1), (0, 0, 0), 3)

    def test_logistic_partial_matches_difference_quotient(self):
        x, beta, h = Interval(-0.5, 0.4), np.array([0.7, 1.3]), 1e-6
        for i in range(2):
            e = np.zeros(2)
            e[i] = h
            up, dn = model_eval(LOGI, x, beta + e), model_eval(LOGI, x, beta - e)
            fd = sorted(((up.lo - dn.lo) / (2 * h), (up.hi - dn.hi) / (2 * h)))
            p = model_partial(LOGI, x, beta, i)
            assert p.lo == pytest.approx(fd[0], abs=1e-8) and p.hi == pytest.approx(fd[1], abs=1e-8)


class TestErrorEval:
    def test_perfect_fit(self):
        d = one_row((0, 1), (1.70, 12.00))
        assert error_eval(POLY, d, (1, 0, 0)) == Interval(0, 0)

    def test_residual_self_product(self):
        m = ModelSpec.polynomial((2, 12))
        d = one_row((0, 1), (3, 10))
        assert gh_difference(model_eval(m, Interval(0, 1), (1, 0, 0)), Interval(3, 10)) == Interval(-1, 2)
        assert error_eval(m, d, (1, 0, 0)) == Interval(-2, 4)

    def test_two_degenerate_rows(self):
        d = IntervalDataset.from_bounds([(1, 1, 0, 0), (2, 2, 0, 0)])
        # beta2 * X with beta2 = 1 gives residuals [1, 1] and [2, 2].
        assert error_eval(POLY, d, (0, 1, 0)) == Interval(5, 5)

    def test_matches_interval_composition(self):
        data = shipped_dataset("poly")
        beta = (0.3, -1.1, 0.7)
        total = Interval(0, 0)
        for x, y in data.rows:
            r = gh_difference(model_eval(POLY, x, beta), y)
            total = total + mul(r, r)
        e = error_eval(POLY, data, beta)
        assert e.lo == pytest.approx(total.lo, rel=1e-12) and e.hi == pytest.approx(total.hi, rel=1e-12)

    def test_upper_endpoint_nonnegative(self):
        rng = np.random.default_rng(11)
        data = shipped_dataset("poly")
        for beta in rng.uniform(-5, 5, size=(50, 3)):
            assert error_eval(POLY, data, beta).hi >= 0


class TestErrorGradient:
    def test_degenerate_residual_constant_term(self):
        d = one_row((1, 2), (0.7, 11.0))
        g = error_gradient(POLY, d, (1, 0, 0))
        assert g[0].lo == pytest.approx(3.4) and g[0].hi == pytest.approx(24)
        assert error_gradient_moore(POLY, d, (1, 0, 0))[0] == g[0]

    def test_zero_residuals(self):
        d = one_row((0, 1), (1.70, 12.00))
        assert error_gradient(POLY, d, (1, 0, 0)) == IntervalVector.zeros(3)
        assert error_gradient_moore(POLY, d, (1, 0, 0)) == IntervalVector.zeros(3)

    @pytest.mark.parametrize("model,key", [(POLY, "poly"), (LOGI, "logistic")])
    def test_matches_finite_differences(self, model, key):
        data = shipped_dataset(key)
        f = error_ivf(model, data)
        rng = np.random.default_rng(3)
        for beta in rng.uniform(-2, 2, size=(10, model.param_dim)):
            ana = error_gradient(model, data, beta)
            num = gh_gradient(f, beta, numeric=True)
            np.testing.assert_allclose(ana.lo, num.lo, atol=1e-5)
            np.testing.assert_allclose(ana.hi, num.hi, atol=1e-5)

    def test_moore_form_encloses_exact_for_polynomial(self):
        data = shipped_dataset("poly")
        beta = (0.2, -0.4, 0.6)
        exact = error_gradient(POLY, data, beta)
        wide = error_gradient_moore(POLY, data, beta)
        for e, m in zip(exact, wide):
            assert m.lo <= e.lo + 1e-9 and e.hi <= m.hi + 1e-9


class TestFit:
    def test_config_defaults(self):
        cfg = fit_config((0, 0), WeightPair(0.7))
        assert cfg.grad_tol == 1e-12 and cfg.line_search.max_alpha == 1e8
        assert fit_config((0, 0), WeightPair(0.7), grad_tol=1e-3).grad_tol == 1e-3

    def test_polynomial_equal_weights(self):
        data = shipped_dataset("poly")
        res = fit(POLY, data, (6, -8, 9), WeightPair(0.5))
        assert res.trace.converged
        np.testing.assert_allclose(res.beta_hat, (-0.0896, -0.2777, 0.5352), atol=0.05)

    def test_reference_estimates_are_near_critical(self):
        data = shipped_dataset("poly")
        scale = error_gradient(POLY, data, (6, -8, 9)).norm()
        for beta in [(-0.0876, -0.2974, 0.5458), (-0.0896, -0.2777, 0.5352)]:
            assert is_stationary(error_gradient(POLY, data, beta), 1e-2 * scale)
        data = shipped_dataset("logistic")
        scale = error_gradient(LOGI, data, (0.5, 0.5)).norm()
        assert is_stationary(error_gradient(LOGI, data, (3.3940, 8.5835)), 1e-2 * scale)

    def test_cfg_start_and_weights_replaced(self):
        data = shipped_dataset("poly")
        cfg = SolverConfig((0, 0, 0), WeightPair(0.1), max_iter=1)
        res = fit(POLY, data, (6, -8, 9), WeightPair(0.5), cfg)
        np.testing.assert_array_equal(res.trace.iterations[0].x, (6, -8, 9))
