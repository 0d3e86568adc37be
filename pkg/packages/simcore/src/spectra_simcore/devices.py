"""IoT device lifecycle.

  IDLE    no payload
  WAIT    payload pending, waiting for the central node to assign a channel
  SENSE   assigned this frame, sensing (transient within a frame)
  ACTIVE  transmitting inside a granted window

Exactly one lifecycle value per device at any instant keeps the four sets
disjoint and exhaustive.

Under `deadline` demand every frame a device holds demand uses one frame of
it up, sent or not; under `backlog` only delivered frames do.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from spectra_shared.config_models import EventDrivenTraffic, PeriodicTraffic
from spectra_traffic.su import su_generate


class Lifecycle(StrEnum):
    IDLE = "idle"
    WAIT = "wait"
    SENSE = "sense"
    ACTIVE = "active"


@dataclass
class TxWindow:
    channel: int
    frames: int
    started_at: int
    sensed: bool  # the window's first frame carries the sensing overhead
    residue: int = 0  # granted frames beyond the payload, handed on unsensed
    done: int = 0
    lost: int = 0  # frames lost to channel error
    throughput: float = 0.0

    @property
    def skip_remaining(self) -> int:
        return self.frames - self.done


@dataclass
class DeviceState:
    id: int
    traffic: PeriodicTraffic | EventDrivenTraffic
    rng: np.random.Generator
    phase: int = 0
    lifecycle: Lifecycle = Lifecycle.IDLE
    pending: int = 0
    window: TxWindow | None = None
    sensings: int = 0
    dropped: int = 0

    @property
    def channel(self) -> int | None:
        return self.window.channel if self.window is not None else None

    def generate(self, frame: int) -> int:
        """Draw this frame's new payload; an idle device with payload starts waiting.

        Periodic bursts that land while the device is busy extend its payload.
        Event-driven alarms are only drawn while idle.
        """
        if isinstance(self.traffic, PeriodicTraffic):
            demand = su_generate(self.traffic, frame + self.phase, self.rng)
        elif self.lifecycle is Lifecycle.IDLE:
            demand = su_generate(self.traffic, frame, self.rng)
        else:
            demand = 0
        if demand > 0:
            self.pending += demand
            if self.lifecycle is Lifecycle.IDLE:
                self.lifecycle = Lifecycle.WAIT
        return demand

    def lapse(self) -> None:
        """Drop one frame of demand whose ON period passed unsent."""
        if self.pending <= 0:
            raise ValueError(f"device {self.id} has no demand to drop")
        self.pending -= 1
        self.dropped += 1
        if self.pending == 0 and self.lifecycle is Lifecycle.WAIT:
            self.lifecycle = Lifecycle.IDLE

    def open_window(self, window: TxWindow) -> None:
        self.window = window
        self.lifecycle = Lifecycle.ACTIVE

    def close_window(self) -> TxWindow:
        if self.window is None:
            raise ValueError(f"device {self.id} has no open window")
        window, self.window = self.window, None
        self.lifecycle = Lifecycle.WAIT if self.pending > 0 else Lifecycle.IDLE
        return window
