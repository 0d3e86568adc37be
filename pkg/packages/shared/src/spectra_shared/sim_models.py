"""Simulation boundary models: the contract between the experiment manager,
simcore and metrics.

These types cross the Temporal activity boundary. The manager plans one
ReplicationRequest per (policy, replication); simcore runs it, writes the full
per-frame trace next to the other outputs and returns a ReplicationPointer.
Metrics reads the traces back and publishes CSVs.

Design choices:
  - Pointers carry paths and scalar totals, never per-frame arrays; a
    20 000-frame trace is several MB of JSON, well past Temporal's payload cap.
  - The config travels whole with every request so an activity is
    reproducible from its input alone.
"""

from __future__ import annotations

from pydantic import BaseModel

from spectra_shared.config_models import ExperimentConfig, Policy
from spectra_shared.models import RunResult

# ============================================================================
# Replication (simcore)
# ============================================================================


class ReplicationRequest(BaseModel):
    """One seeded simulation run of one policy."""

    config: ExperimentConfig
    policy: Policy
    replication: int
    out_dir: str


class ReplicationTotals(BaseModel):
    """Whole-run counters, for the log line and quick sanity checks."""

    sensings: int = 0
    throughput: float = 0.0
    frame_failures: int = 0
    pu_collisions: int = 0
    pu_notifications: int = 0
    attempted_device_frames: int = 0
    windows: int = 0
    dropped_frames: int = 0
    residual_truncations: int = 0


class ReplicationPointer(RunResult):
    """Where a replication's trace landed, plus its totals."""

    policy: Policy = Policy.PROPOSED_SPSA
    replication: int = 0
    trace_path: str = ""
    frames: int = 0
    totals: ReplicationTotals = ReplicationTotals()
    wall_seconds: float = 0.0


# ============================================================================
# Publication (metrics)
# ============================================================================


class PolicySummary(BaseModel):
    """One row of summary.csv: end-of-horizon metrics averaged over replications."""

    policy: Policy
    replications: int
    avg_sensing_per_frame: float
    avg_sensing_per_frame_std: float
    avg_sensing_per_active_frame: float
    avg_sensing_wallclock: float
    avg_throughput: float
    avg_throughput_std: float
    avg_frame_collisions: float
    avg_frame_collisions_std: float
    sensings_per_device: float


class PublishRequest(BaseModel):
    config: ExperimentConfig
    out_dir: str
    pointers: list[ReplicationPointer]


class PublishResult(RunResult):
    files: list[str] = []
    summaries: list[PolicySummary] = []


# ============================================================================
# Experiment (manager)
# ============================================================================


class ExperimentRequest(BaseModel):
    config: ExperimentConfig
    out_dir: str


class ExperimentResult(RunResult):
    out_dir: str = ""
    files: list[str] = []
    summaries: list[PolicySummary] = []
    failed_replications: int = 0
