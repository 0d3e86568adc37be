"""Experiment configuration models: the single JSON document a run is driven by.

Every field has a default, so `{}` is a complete, valid config for the
5-channel / 20-device event-driven setting.

Design choices:
  - Traffic models are tagged unions discriminated by `kind`, so a config file
    reads `{"kind": "gpd", "on": {...}, "off": {...}}` and validation errors
    point at the exact branch that failed.
  - Durations are frame periods everywhere, the PU randomization ranges
    included. `RadioConfig.frame_ms` only scales the sensing overhead.
  - SU demand either expires with its ON period (`deadline`) or queues until
    it is sent (`backlog`).
  - Everything is validated at load time; simulation code never re-checks
    parameter ranges.
"""

from __future__ import annotations

from enum import StrEnum
from typing import Annotated, Literal, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

# ============================================================================
# Policies
# ============================================================================


class Policy(StrEnum):
    """Compared spectrum-access policies. Value order fixes learner seed streams."""

    PROPOSED_FIXED = "proposed-fixed"
    PROPOSED_DECAY = "proposed-decay"
    PROPOSED_SPSA = "proposed-spsa"
    TRADITIONAL = "traditional"
    GENIE = "genie"
    PARAMETRIC = "parametric-baseline"

    @property
    def index(self) -> int:
        return list(Policy).index(self)


# ============================================================================
# PU traffic
# ============================================================================


class GpdParams(BaseModel):
    """Generalized Pareto duration law (frame periods)."""

    model_config = ConfigDict(frozen=True)

    shape: float = Field(ge=0.0)
    scale: float = Field(gt=0.0)
    location: float = Field(ge=0.0)


class HedParams(BaseModel):
    """Hyper-exponential OFF law with an exponential ON law (frame periods)."""

    model_config = ConfigDict(frozen=True)

    weights: list[float]
    means: list[float]
    mean_on: float = Field(gt=0.0)

    @model_validator(mode="after")
    def _check_mixture(self) -> Self:
        if not self.weights or len(self.weights) != len(self.means):
            raise ValueError("weights and means must be non-empty and of equal length")
        if any(w < 0.0 for w in self.weights):
            raise ValueError("mixture weights must be >= 0")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValueError(f"mixture weights must sum to 1, got {sum(self.weights)!r}")
        if any(m <= 0.0 for m in self.means):
            raise ValueError("component means must be > 0")
        return self


class GpdTraffic(BaseModel):
    kind: Literal["gpd"] = "gpd"
    on: GpdParams
    off: GpdParams


class HedTraffic(BaseModel):
    kind: Literal["hed"] = "hed"
    params: HedParams


class ExponentialTraffic(BaseModel):
    kind: Literal["exponential"] = "exponential"
    mean_on: float = Field(gt=0.0)
    mean_off: float = Field(gt=0.0)


PuTrafficModel = Annotated[
    GpdTraffic | HedTraffic | ExponentialTraffic, Field(discriminator="kind")
]


class PuRandomization(BaseModel):
    """Ranges (frame periods) a channel's PU law is drawn from when not listed explicitly."""

    model: Literal["gpd", "exponential"] = "exponential"
    gpd_scale: float = Field(default=500.0, gt=0.0)
    gpd_shape_min: float = Field(default=0.0, ge=0.0)
    gpd_shape_max: float = Field(default=0.5, ge=0.0, lt=1.0)
    gpd_location_min: float = Field(default=50.0, ge=0.0)
    gpd_location_max: float = Field(default=100.0, ge=0.0)
    exp_mean_min: float = Field(default=1.0, gt=0.0)
    exp_mean_max: float = Field(default=200.0, gt=0.0)

    @model_validator(mode="after")
    def _check_ranges(self) -> Self:
        if self.gpd_shape_min > self.gpd_shape_max:
            raise ValueError("gpd_shape_min must not exceed gpd_shape_max")
        if self.gpd_location_min > self.gpd_location_max:
            raise ValueError("gpd_location_min must not exceed gpd_location_max")
        if self.exp_mean_min > self.exp_mean_max:
            raise ValueError("exp_mean_min must not exceed exp_mean_max")
        return self


# ============================================================================
# SU traffic
# ============================================================================


class PeriodicTraffic(BaseModel):
    kind: Literal["periodic"] = "periodic"
    on_frames: int = Field(default=5, ge=1)
    interval_frames: int = Field(default=100, ge=1)

    @model_validator(mode="after")
    def _check_duty(self) -> Self:
        if self.on_frames > self.interval_frames:
            raise ValueError("on_frames must not exceed interval_frames")
        return self


class EventDrivenTraffic(BaseModel):
    kind: Literal["event_driven"] = "event_driven"
    alarm_probability: float = Field(default=0.05, ge=0.0, le=1.0)
    mean_on_frames: float = Field(default=10.0, gt=0.0)


SuTrafficParams = Annotated[PeriodicTraffic | EventDrivenTraffic, Field(discriminator="kind")]


class TrafficConfig(BaseModel):
    pu_channels: list[PuTrafficModel] | None = None
    pu_randomization: PuRandomization = PuRandomization()
    collision_policy: Literal["restart", "resume"] = "restart"
    su_demand: Literal["deadline", "backlog"] = "deadline"
    su: SuTrafficParams = EventDrivenTraffic()
    su_devices: list[SuTrafficParams] | None = None


# ============================================================================
# Radio, learners
# ============================================================================


class RadioConfig(BaseModel):
    """Sensor and link abstraction. SNR is informational; P_d/P_f drive sensing."""

    p_detect: float = Field(default=0.95, ge=0.0, le=1.0)
    p_false_alarm: float = Field(default=0.05, ge=0.0, le=1.0)
    frame_ms: float = Field(default=10.0, gt=0.0)
    sensing_ms: float = Field(default=2.0, ge=0.0)
    channel_error: float = Field(default=0.05, ge=0.0, lt=1.0)
    snr_db: float = -10.0
    capacity_min: float = Field(default=1.0, gt=0.0)
    capacity_max: float = Field(default=5.0, gt=0.0)
    capacity: list[list[float]] | None = None

    @model_validator(mode="after")
    def _check_radio(self) -> Self:
        if self.sensing_ms >= self.frame_ms:
            raise ValueError("sensing_ms must be shorter than frame_ms")
        if self.capacity_min > self.capacity_max:
            raise ValueError("capacity_min must not exceed capacity_max")
        if self.capacity is not None and any(v <= 0.0 for row in self.capacity for v in row):
            raise ValueError("capacity entries must be > 0")
        return self

    @property
    def sensing_overhead(self) -> float:
        """Fraction of a frame lost when the frame starts with sensing."""
        return self.sensing_ms / self.frame_ms


class AssignConfig(BaseModel):
    eta: float = Field(default=0.2, ge=0.0, le=1.0)
    kappa: float = Field(default=0.5, gt=0.0, le=1.0)
    max_stall: int | None = Field(default=None, ge=1)
    iteration_cap_factor: int = Field(default=50, ge=1)


class ResidualConfig(BaseModel):
    support: int = Field(default=100, ge=2)
    hold_frames: int = Field(default=2, ge=0)
    prior_count: float = Field(default=1.0, gt=0.0)
    parametric_prior_shape: float = Field(default=1.0, gt=0.0)
    parametric_prior_rate: float = Field(default=10.0, gt=0.0)


class SpsaParams(BaseModel):
    a: float = Field(default=5.0, gt=0.0)
    alpha: float = Field(default=0.2, gt=0.0)
    v: float = Field(default=0.1, gt=0.0)
    gamma: float = Field(default=0.4, gt=0.0)
    epsilon0: float = Field(default=0.1, ge=0.0, le=1.0)
    window: int = Field(default=50, ge=1)


class ExplorationConfig(BaseModel):
    constant_epsilon: float = Field(default=0.1, ge=0.0, le=1.0)
    decay_beta: float = Field(default=0.5, gt=0.0)
    t_int: float = Field(default=0.1, ge=0.0, le=1.0)
    spsa: SpsaParams = SpsaParams()


# ============================================================================
# Experiment
# ============================================================================


class ExperimentConfig(BaseModel):
    """One experiment: a network, its traffic, the learners and the run plan."""

    channels: int = Field(default=5, ge=1)
    devices: int = Field(default=20, ge=1)
    horizon: int = Field(default=20_000, ge=1)
    replications: int = Field(default=50, ge=1)
    seed: int = Field(default=0, ge=0)
    policies: list[Policy] = Field(default_factory=lambda: list(Policy))
    trace_stride: int = Field(default=1, ge=1)
    traffic: TrafficConfig = TrafficConfig()
    radio: RadioConfig = RadioConfig()
    assign: AssignConfig = AssignConfig()
    residual: ResidualConfig = ResidualConfig()
    exploration: ExplorationConfig = ExplorationConfig()

    @model_validator(mode="after")
    def _check_shapes(self) -> Self:
        if not self.policies:
            raise ValueError("policies must name at least one policy")
        if len(set(self.policies)) != len(self.policies):
            raise ValueError("policies must not repeat")
        pu = self.traffic.pu_channels
        if pu is not None and len(pu) != self.channels:
            raise ValueError(
                f"traffic.pu_channels lists {len(pu)} models for {self.channels} channels"
            )
        su = self.traffic.su_devices
        if su is not None and len(su) != self.devices:
            raise ValueError(
                f"traffic.su_devices lists {len(su)} entries for {self.devices} devices"
            )
        cap = self.radio.capacity
        if cap is not None and (
            len(cap) != self.devices or any(len(r) != self.channels for r in cap)
        ):
            raise ValueError("radio.capacity must be a devices x channels matrix")
        return self

    def device_traffic(self, device: int) -> PeriodicTraffic | EventDrivenTraffic:
        if self.traffic.su_devices is not None:
            return self.traffic.su_devices[device]
        return self.traffic.su
