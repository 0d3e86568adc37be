"""Tests for SU demand generation and per-channel PU law randomization."""

from __future__ import annotations

import numpy as np
import pytest
from spectra_shared.config_models import (
    EventDrivenTraffic,
    ExponentialTraffic,
    GpdTraffic,
    PeriodicTraffic,
    PuRandomization,
)
from spectra_traffic.layout import draw_channel_models
from spectra_traffic.su import periodic_phase, su_generate

# ============================================================================
# su_generate
# ============================================================================


class TestSuGenerate:
    def test_periodic_on_cycle(self):
        """Periodic(5, 100) at frame 200 emits 5 frames."""
        params = PeriodicTraffic(on_frames=5, interval_frames=100)
        assert su_generate(params, 200, np.random.default_rng(0)) == 5

    def test_periodic_off_cycle(self):
        params = PeriodicTraffic(on_frames=5, interval_frames=100)
        assert su_generate(params, 201, np.random.default_rng(0)) == 0

    def test_negative_frame_rejected(self):
        with pytest.raises(ValueError, match="frame_index"):
            su_generate(PeriodicTraffic(), -1, np.random.default_rng(0))

    def test_event_driven_payload_at_least_one_frame(self):
        params = EventDrivenTraffic(alarm_probability=1.0, mean_on_frames=0.01)
        rng = np.random.default_rng(1)
        assert all(su_generate(params, t, rng) == 1 for t in range(200))

    def test_event_driven_never_fires_at_zero_probability(self):
        params = EventDrivenTraffic(alarm_probability=0.0)
        rng = np.random.default_rng(2)
        assert sum(su_generate(params, t, rng) for t in range(1000)) == 0

    def test_event_driven_firing_rate(self):
        """P_alarm = 0.05: about 5% of 10^5 idle frames raise an alarm."""
        params = EventDrivenTraffic(alarm_probability=0.05, mean_on_frames=10.0)
        rng = np.random.default_rng(3)
        fired = sum(su_generate(params, t, rng) > 0 for t in range(100_000))
        assert fired / 100_000 == pytest.approx(0.05, abs=0.003)

    def test_periodic_phase_within_interval(self):
        params = PeriodicTraffic(on_frames=2, interval_frames=7)
        rng = np.random.default_rng(4)
        phases = {periodic_phase(params, rng) for _ in range(500)}
        assert phases == set(range(7))

    def test_event_driven_has_no_phase(self):
        assert periodic_phase(EventDrivenTraffic(), np.random.default_rng(0)) == 0

    def test_on_frames_cannot_exceed_interval(self):
        with pytest.raises(ValueError, match="on_frames"):
            PeriodicTraffic(on_frames=11, interval_frames=10)


# ============================================================================
# draw_channel_models
# ============================================================================


class TestDrawChannelModels:
    def test_exponential_means_within_range(self):
        models = draw_channel_models(PuRandomization(), 50, np.random.default_rng(0))
        assert len(models) == 50
        for m in models:
            assert isinstance(m, ExponentialTraffic)
            assert 1.0 <= m.mean_on <= 200.0
            assert 1.0 <= m.mean_off <= 200.0
        assert len({m.mean_off for m in models}) == 50

    def test_gpd_ranges(self):
        r = PuRandomization(model="gpd")
        models = draw_channel_models(r, 20, np.random.default_rng(1))
        for m in models:
            assert isinstance(m, GpdTraffic)
            for p in (m.on, m.off):
                assert p.scale == pytest.approx(500.0)
                assert 50.0 <= p.location <= 100.0
                assert 0.0 <= p.shape <= 0.5

    def test_same_stream_same_layout(self):
        a = draw_channel_models(PuRandomization(), 5, np.random.default_rng(9))
        b = draw_channel_models(PuRandomization(), 5, np.random.default_rng(9))
        assert a == b
