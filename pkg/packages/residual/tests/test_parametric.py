"""Tests for the Gamma-exponential parametric residual estimator."""

from __future__ import annotations

import numpy as np
import pytest
from spectra_residual.parametric import (
    ParametricResidualModel,
    predict_residual_parametric,
    update_parametric,
)
from spectra_shared.config_models import ResidualConfig


class TestPredictResidualParametric:
    def test_concentrated_posterior_mean_skip(self):
        """Posterior pinned at rate 1/20: mean predicted skip about 20 frames."""
        model = ParametricResidualModel.prior(1, ResidualConfig(support=1_000))
        model.shape[0], model.rate[0] = 1e6, 2e7
        rng = np.random.default_rng(0)
        draws = [predict_residual_parametric(model, 0, rng) for _ in range(100_000)]
        assert np.mean(draws) == pytest.approx(20.0, rel=0.03)

    def test_prior_only_predictions_follow_prior_predictive(self):
        """Shape 1, rate 10: the prior predictive is Lomax, P(X > x) = (10 / (10 + x))."""
        model = ParametricResidualModel.prior(1, ResidualConfig(support=1_000))
        rng = np.random.default_rng(1)
        draws = np.array([predict_residual_parametric(model, 0, rng) for _ in range(50_000)])
        # quantized class > 10 means the continuous draw exceeded 10.5
        assert np.mean(draws > 10) == pytest.approx(10.0 / 20.5, abs=0.01)

    def test_predictions_stay_in_support(self):
        model = ParametricResidualModel.prior(1, ResidualConfig(support=5))
        rng = np.random.default_rng(2)
        draws = {predict_residual_parametric(model, 0, rng) for _ in range(5_000)}
        assert draws <= set(range(1, 6))
        assert model.truncations > 0


class TestUpdateParametric:
    def test_posterior_rate_converges(self):
        """10^4 fully observed exponential OFF periods of mean 50: rate within 5% of 1/50."""
        model = ParametricResidualModel.prior(1, ResidualConfig())
        rng = np.random.default_rng(3)
        for x in rng.exponential(50.0, size=10_000):
            update_parametric(model, 0, float(x), closed=True)
        assert model.posterior_mean_rate(0) == pytest.approx(1.0 / 50.0, rel=0.05)

    def test_censored_window_adds_exposure_only(self):
        model = ParametricResidualModel.prior(2, ResidualConfig())
        update_parametric(model, 1, 7.0, closed=False)
        assert model.shape[1] == 1.0
        assert model.rate[1] == 17.0
        assert model.rate[0] == 10.0

    def test_non_positive_tau_rejected(self):
        model = ParametricResidualModel.prior(1, ResidualConfig())
        with pytest.raises(ValueError, match="tau"):
            update_parametric(model, 0, -1.0, closed=True)
