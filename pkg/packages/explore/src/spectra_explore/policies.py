"""Exploration schedules and the per-channel controller.

Three schedules set the eps that predict_residual mixes onto the largest skip
class:

  ConstantSchedule  eps fixed for the whole run
  DecaySchedule     eps_t = min(1, 1 / t^beta), t the 1-based frame index
  SpsaState         eps tuned online to keep collisions near T_int

Each channel owns its own schedule instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from spectra_shared.config_models import ExplorationConfig

from spectra_explore.spsa import SpsaState, observe_window


@dataclass(frozen=True)
class ConstantSchedule:
    epsilon: float


@dataclass(frozen=True)
class DecaySchedule:
    beta: float


ExplorationPolicy = ConstantSchedule | DecaySchedule | SpsaState


class ScheduleKind(StrEnum):
    CONSTANT = "constant"
    DECAY = "decay"
    SPSA = "spsa"


def current_epsilon(policy: ExplorationPolicy, t: int) -> float:
    match policy:
        case ConstantSchedule():
            return policy.epsilon
        case DecaySchedule():
            if t < 1:
                raise ValueError(f"decay schedule needs t >= 1, got {t}")
            return min(1.0, float(t) ** -policy.beta)
        case SpsaState():
            return policy.active_epsilon


@dataclass
class ExplorationController:
    """One schedule per channel."""

    schedules: list[ExplorationPolicy]

    @classmethod
    def build(
        cls,
        kind: ScheduleKind,
        cfg: ExplorationConfig,
        channels: int,
        rng: np.random.Generator,
    ) -> ExplorationController:
        schedules: list[ExplorationPolicy]
        match kind:
            case ScheduleKind.CONSTANT:
                schedules = [ConstantSchedule(cfg.constant_epsilon) for _ in range(channels)]
            case ScheduleKind.DECAY:
                schedules = [DecaySchedule(cfg.decay_beta) for _ in range(channels)]
            case ScheduleKind.SPSA:
                schedules = [SpsaState.start(cfg.spsa, cfg.t_int, rng) for _ in range(channels)]
        return cls(schedules=schedules)

    def epsilon(self, channel: int, t: int) -> float:
        return current_epsilon(self.schedules[channel], t)

    def iterates(self, t: int) -> list[float]:
        """Per-channel eps for traces: SPSA's unperturbed iterate eps_k."""
        return [
            s.epsilon if isinstance(s, SpsaState) else current_epsilon(s, t)
            for s in self.schedules
        ]

    def observe(
        self, channel: int, rng: np.random.Generator, *, sensed: bool, collided: bool
    ) -> None:
        """Report a closed transmission window on `channel`; only SPSA listens."""
        schedule = self.schedules[channel]
        if isinstance(schedule, SpsaState):
            observe_window(schedule, rng, sensed=sensed, collided=collided)
