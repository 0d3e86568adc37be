"""Tests for the PU ON/OFF renewal process."""

from __future__ import annotations

import numpy as np
import pytest
from spectra_shared.config_models import ExponentialTraffic, GpdParams, GpdTraffic
from spectra_traffic.pu_process import (
    RENEWAL_LOG_SIZE,
    PuProcess,
    PuState,
    advance_pu,
    advance_pu_to,
    first_activity,
    notify_collision,
    residual_off_time,
    start_pu,
)

EXP = ExponentialTraffic(mean_on=5.0, mean_off=15.0)
# ON periods never shorter than 2 frames
LONG_ON = GpdTraffic(
    on=GpdParams(shape=0.1, scale=5.0, location=2.0),
    off=GpdParams(shape=0.1, scale=5.0, location=2.0),
)


def _proc(
    state: PuState,
    remaining: float,
    model=EXP,
    seed: int = 0,
    collision_policy="restart",
) -> PuProcess:
    return PuProcess(
        model=model,
        rng=np.random.default_rng(seed),
        retransmit_rng=np.random.default_rng(seed + 1000),
        collision_policy=collision_policy,
        state=state,
        clock=0.0,
        next_switch=remaining,
    )


def _occupancy(initial: PuState, transitions, horizon: float) -> float:
    busy, state, last = 0.0, initial, 0.0
    for tr in transitions:
        if state is PuState.ACTIVE:
            busy += tr.offset - last
        state, last = tr.state, tr.offset
    if state is PuState.ACTIVE:
        busy += horizon - last
    return busy / horizon


# ============================================================================
# advance_pu
# ============================================================================


class TestAdvancePu:
    def test_no_boundary_crossed(self):
        """Idle with 5.0 remaining, dt = 3.0: nothing happens, 2.0 remains."""
        proc = _proc(PuState.IDLE, 5.0)
        assert advance_pu(proc, 3.0) == []
        assert proc.state is PuState.IDLE
        assert proc.time_remaining == pytest.approx(2.0)

    def test_single_boundary(self):
        """Idle with 1.0 remaining, dt = 2.0: one switch to Active at offset 1.0."""
        proc = _proc(PuState.IDLE, 1.0, model=LONG_ON)
        transitions = advance_pu(proc, 2.0)
        assert len(transitions) == 1
        assert transitions[0].offset == pytest.approx(1.0)
        assert transitions[0].state is PuState.ACTIVE
        assert proc.state is PuState.ACTIVE
        assert proc.time_remaining > 0.0

    def test_non_positive_dt_rejected(self):
        proc = _proc(PuState.IDLE, 1.0)
        with pytest.raises(ValueError, match="dt must be > 0"):
            advance_pu(proc, 0.0)

    def test_transitions_alternate_states(self):
        proc = _proc(PuState.IDLE, 0.5)
        transitions = advance_pu(proc, 500.0)
        assert len(transitions) > 10
        for prev, cur in zip(transitions, transitions[1:], strict=False):
            assert prev.state is not cur.state
            assert cur.offset > prev.offset

    def test_one_long_step_matches_many_short_steps(self):
        """dt = 10.0 once and dt = 0.01 a thousand times cross the same switches."""
        coarse = _proc(PuState.IDLE, 0.7, seed=42)
        fine = _proc(PuState.IDLE, 0.7, seed=42)
        expected = [(t.offset, t.state) for t in advance_pu(coarse, 10.0)]
        observed = []
        for i in range(1000):
            start = fine.clock
            observed += [(start + t.offset, t.state) for t in advance_pu(fine, 0.01)]
            # keep the fine clock on the exact grid
            advance_pu_to(fine, (i + 1) * 0.01)
        assert [s for _, s in observed] == [s for _, s in expected]
        np.testing.assert_allclose([o for o, _ in observed], [o for o, _ in expected])

    def test_advance_to_past_instant_is_noop(self):
        proc = _proc(PuState.IDLE, 5.0)
        advance_pu_to(proc, 2.0)
        assert advance_pu_to(proc, 1.0) == []
        assert proc.clock == 2.0

    @pytest.mark.slow
    def test_long_run_occupancy_matches_mean_ratio(self):
        """No collisions: busy fraction over 10^6 frames is E[ON]/(E[ON]+E[OFF]) within 2%."""
        rng = np.random.default_rng(123)
        proc = start_pu(EXP, rng, np.random.default_rng(124))
        initial = proc.state
        transitions = advance_pu(proc, 1_000_000.0)
        assert _occupancy(initial, transitions, 1_000_000.0) == pytest.approx(0.25, rel=0.02)


# ============================================================================
# notify_collision
# ============================================================================


class TestNotifyCollision:
    def test_restart_draws_fresh_on_period(self):
        proc = _proc(PuState.ACTIVE, 0.3, model=LONG_ON)
        notify_collision(proc)
        assert proc.state is PuState.ACTIVE
        assert proc.collided is True
        assert proc.notifications == 1
        assert proc.time_remaining >= 2.0

    def test_resume_keeps_remaining_on_time(self):
        proc = _proc(PuState.ACTIVE, 0.3, collision_policy="resume")
        notify_collision(proc)
        assert proc.time_remaining == pytest.approx(0.3)
        assert proc.notifications == 1

    def test_idle_pu_rejects_collision(self):
        proc = _proc(PuState.IDLE, 3.0)
        with pytest.raises(ValueError, match="idle"):
            notify_collision(proc)

    def test_collision_every_frame_keeps_pu_active(self):
        """1000 frames of back-to-back collisions: the PU never gets to go idle."""
        proc = _proc(PuState.ACTIVE, 3.0, model=LONG_ON)
        for _ in range(1000):
            assert advance_pu(proc, 1.0) == []
            assert proc.state is PuState.ACTIVE
            notify_collision(proc)
        assert proc.notifications == 1000

    def test_collisions_leave_renewal_sequence_untouched(self):
        """Retransmission redraws use their own stream; renewals stay paired."""
        quiet = _proc(PuState.IDLE, 1.0, seed=5)
        noisy = _proc(PuState.IDLE, 1.0, seed=5)
        for t in range(1, 400):
            advance_pu_to(quiet, float(t))
            advance_pu_to(noisy, float(t))
            if noisy.state is PuState.ACTIVE and t % 3 == 0:
                notify_collision(noisy)
        n = len(noisy.renewal_log)
        assert n > 0
        assert noisy.renewal_log == quiet.renewal_log[:n]

    def test_a_switch_clears_the_collision_flag(self):
        proc = _proc(PuState.ACTIVE, 0.5, collision_policy="resume")
        notify_collision(proc)
        advance_pu(proc, 1.0)
        assert proc.collided is False


# ============================================================================
# Queries
# ============================================================================


class TestQueries:
    def test_first_activity_when_active(self):
        assert first_activity(_proc(PuState.ACTIVE, 4.0), 1.0) == 0.0

    def test_first_activity_inside_window(self):
        assert first_activity(_proc(PuState.IDLE, 0.4), 1.0) == pytest.approx(0.4)

    def test_first_activity_beyond_window(self):
        assert first_activity(_proc(PuState.IDLE, 2.5), 1.0) is None

    def test_residual_off_time(self):
        assert residual_off_time(_proc(PuState.IDLE, 7.25)) == pytest.approx(7.25)
        assert residual_off_time(_proc(PuState.ACTIVE, 7.25)) == 0.0

    def test_renewal_log_is_capped(self):
        proc = _proc(PuState.IDLE, 0.1)
        advance_pu(proc, 50_000.0)
        assert len(proc.renewal_log) == RENEWAL_LOG_SIZE

    def test_stationary_start_mix(self):
        """Start state is Active with probability E[ON]/(E[ON]+E[OFF]) = 0.25."""
        rng = np.random.default_rng(8)
        starts = [start_pu(EXP, rng, rng).state for _ in range(10_000)]
        frac = sum(s is PuState.ACTIVE for s in starts) / len(starts)
        assert frac == pytest.approx(0.25, abs=0.02)
