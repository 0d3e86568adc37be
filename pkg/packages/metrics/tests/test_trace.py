"""Tests for trace recording and storage."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from spectra_metrics.trace import Metric, MetricsTrace, TraceRecorder


def _recorded(frames: int = 4, channels: int = 2) -> MetricsTrace:
    recorder = TraceRecorder(frames, channels)
    for t in range(frames):
        recorder.record(
            sensing=t,
            throughput=1.5 * t,
            collisions=t % 2,
            n_active=2,
            attempted=1,
            epsilon=[0.1, 0.2] if channels else [],
        )
    return recorder.trace()


class TestTraceRecorder:
    def test_columns(self):
        trace = _recorded()
        np.testing.assert_array_equal(trace.sensing, [0, 1, 2, 3])
        np.testing.assert_allclose(trace.throughput, [0.0, 1.5, 3.0, 4.5])
        assert trace.epsilon.shape == (4, 2)
        assert trace.series(Metric.COLLISIONS).dtype == np.float64

    def test_partial_trace(self):
        recorder = TraceRecorder(10, 0)
        recorder.record(
            sensing=1, throughput=0.0, collisions=0, n_active=1, attempted=0, epsilon=[]
        )
        assert recorder.trace().frames == 1

    def test_full_recorder_rejects_more(self):
        recorder = TraceRecorder(1, 0)
        recorder.record(
            sensing=0, throughput=0.0, collisions=0, n_active=0, attempted=0, epsilon=[]
        )
        with pytest.raises(ValueError, match="full"):
            recorder.record(
                sensing=0, throughput=0.0, collisions=0, n_active=0, attempted=0, epsilon=[]
            )


class TestMetricsTrace:
    def test_save_load(self, tmp_path: Path):
        trace = _recorded()
        path = tmp_path / "nested" / "rep_0.npz"
        trace.save(path)
        loaded = MetricsTrace.load(path)
        np.testing.assert_array_equal(loaded.sensing, trace.sensing)
        np.testing.assert_array_equal(loaded.epsilon, trace.epsilon)

    def test_ragged_columns_rejected(self):
        with pytest.raises(ValueError, match="throughput"):
            MetricsTrace(
                sensing=np.zeros(3, dtype=np.int64),
                throughput=np.zeros(2),
                collisions=np.zeros(3, dtype=np.int64),
                n_active=np.zeros(3, dtype=np.int64),
                attempted=np.zeros(3, dtype=np.int64),
                epsilon=np.zeros((3, 0)),
            )
