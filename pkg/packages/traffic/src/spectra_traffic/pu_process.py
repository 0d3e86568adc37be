"""Per-channel PU ON/OFF renewal process in continuous time.

The process keeps an absolute clock and the absolute instant of its next
switch. Switch instants are therefore running sums of drawn durations and do
not depend on how the caller slices time into `dt` steps; one advance of 10.0
and a thousand advances of 0.01 produce the same transitions.

Collisions: an SU transmission overlapping an ON period makes the PU
retransmit. Under the "restart" policy the ON period starts over with a fresh
duration drawn from the process's retransmission stream; the renewal stream is
untouched, so the sequence of renewal draws is identical across every policy
sharing a replication seed. Under "resume" the remaining ON time is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Literal

import numpy as np
from spectra_shared.config_models import PuTrafficModel

from spectra_traffic.samplers import mean_off, mean_on, sample_off, sample_on

# Renewal durations kept per process for paired-seed audits
RENEWAL_LOG_SIZE = 100


class PuState(StrEnum):
    ACTIVE = "active"
    IDLE = "idle"


@dataclass(frozen=True)
class PuTransition:
    """A state switch `offset` time units after the start of an advance."""

    offset: float
    state: PuState


@dataclass
class PuProcess:
    model: PuTrafficModel
    rng: np.random.Generator
    retransmit_rng: np.random.Generator
    collision_policy: Literal["restart", "resume"] = "restart"
    state: PuState = PuState.IDLE
    clock: float = 0.0
    next_switch: float = 1.0
    collided: bool = False
    notifications: int = 0
    renewal_log: list[float] = field(default_factory=list)

    @property
    def time_remaining(self) -> float:
        return self.next_switch - self.clock

    def draw_renewal(self, state: PuState) -> float:
        """Draw the length of a fresh period in `state` from the renewal stream."""
        if state is PuState.ACTIVE:
            duration = sample_on(self.model, self.rng)
        else:
            duration = sample_off(self.model, self.rng)
        if len(self.renewal_log) < RENEWAL_LOG_SIZE:
            self.renewal_log.append(duration)
        return duration


def start_pu(
    model: PuTrafficModel,
    rng: np.random.Generator,
    retransmit_rng: np.random.Generator,
    collision_policy: Literal["restart", "resume"] = "restart",
) -> PuProcess:
    """Start a process in its long-run state mix: Active w.p. E[ON]/(E[ON]+E[OFF])."""
    on, off = mean_on(model), mean_off(model)
    busy = bool(rng.random() < on / (on + off))
    proc = PuProcess(
        model=model,
        rng=rng,
        retransmit_rng=retransmit_rng,
        collision_policy=collision_policy,
        state=PuState.ACTIVE if busy else PuState.IDLE,
    )
    proc.next_switch = proc.draw_renewal(proc.state)
    return proc


def advance_pu(proc: PuProcess, dt: float) -> list[PuTransition]:
    """Consume `dt` of simulated time; return the switches crossed, in order."""
    if dt <= 0.0:
        raise ValueError(f"dt must be > 0, got {dt!r}")
    return _run_until(proc, proc.clock + dt)


def advance_pu_to(proc: PuProcess, instant: float) -> list[PuTransition]:
    """Advance to an absolute instant; a no-op if the clock is already there."""
    if instant <= proc.clock:
        return []
    return _run_until(proc, instant)


def _run_until(proc: PuProcess, end: float) -> list[PuTransition]:
    start = proc.clock
    transitions: list[PuTransition] = []
    while proc.next_switch <= end:
        at = proc.next_switch
        proc.state = PuState.IDLE if proc.state is PuState.ACTIVE else PuState.ACTIVE
        proc.collided = False
        proc.next_switch = at + proc.draw_renewal(proc.state)
        transitions.append(PuTransition(offset=at - start, state=proc.state))
    proc.clock = end
    return transitions


def notify_collision(proc: PuProcess) -> PuProcess:
    """Tell an Active PU its transmission collided; it stays Active and retransmits."""
    if proc.state is not PuState.ACTIVE:
        raise ValueError("collision notified while the PU is idle")
    proc.collided = True
    proc.notifications += 1
    if proc.collision_policy == "restart":
        proc.next_switch = proc.clock + sample_on(proc.model, proc.retransmit_rng)
    return proc


def first_activity(proc: PuProcess, dt: float) -> float | None:
    """Offset of the first instant in [clock, clock + dt) the PU is Active, if any."""
    if proc.state is PuState.ACTIVE:
        return 0.0
    wait = proc.time_remaining
    return wait if wait < dt else None


def residual_off_time(proc: PuProcess) -> float:
    """Exact remaining idle time; zero while Active. Only the genie may ask."""
    return proc.time_remaining if proc.state is PuState.IDLE else 0.0
