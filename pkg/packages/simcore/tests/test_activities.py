"""Tests for the replication activity.

Exercised directly, without a Temporal worker: the activity body is a plain
function over pydantic models and the filesystem.
"""

from __future__ import annotations

from pathlib import Path

import pytest
from spectra_metrics.trace import MetricsTrace
from spectra_shared.config_models import ExperimentConfig, Policy
from spectra_shared.sim_models import ReplicationRequest
from spectra_simcore.activities import run_replication, simulate_replication, trace_path


def _request(out_dir: Path, **overrides) -> ReplicationRequest:
    config = ExperimentConfig(channels=2, devices=4, horizon=200, replications=1, seed=5)
    fields: dict = dict(
        config=config, policy=Policy.PROPOSED_SPSA, replication=0, out_dir=str(out_dir)
    )
    fields.update(overrides)
    return ReplicationRequest(**fields)


class TestRunReplication:
    def test_writes_trace_and_reports_totals(self, tmp_path: Path):
        pointer = run_replication(_request(tmp_path))
        assert pointer.success, pointer.message
        assert pointer.trace_path == str(trace_path(tmp_path, "proposed-spsa", 0))
        assert pointer.frames == 200

        trace = MetricsTrace.load(Path(pointer.trace_path))
        assert trace.frames == 200
        assert int(trace.sensing.sum()) == pointer.totals.sensings
        assert pointer.totals.pu_notifications == pointer.totals.pu_collisions

    def test_layout(self, tmp_path: Path):
        path = trace_path(tmp_path, "genie", 3)
        assert path == tmp_path / "replications" / "genie" / "rep_3.npz"

    def test_unwritable_output_reports_failure(self, tmp_path: Path):
        blocker = tmp_path / "blocked"
        blocker.write_text("not a directory")
        pointer = run_replication(_request(blocker))
        assert pointer.success is False
        assert "failed" in pointer.message
        assert pointer.policy is Policy.PROPOSED_SPSA


class TestSimulateReplication:
    @pytest.mark.asyncio
    async def test_matches_sync_body(self, tmp_path: Path):
        request = _request(tmp_path, policy=Policy.TRADITIONAL, replication=1)
        pointer = await simulate_replication(request)
        assert pointer.success
        again = run_replication(request)
        assert again.totals == pointer.totals
