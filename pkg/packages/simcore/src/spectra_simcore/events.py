"""Per-frame events emitted by the engine.

Every assignment the central node grants ends in exactly one terminal event:
SensedBusy, TxSuccess, TxCollision or TxDeclined. A granted window is
announced by SkipGranted, after SensedFree when the device sensed first.
TxCollision always means the window overlapped the PU; frames lost to channel
error are counted in `lost` and do not end the window.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SensedFree:
    device: int
    channel: int


@dataclass(frozen=True)
class SensedBusy:
    device: int
    channel: int


@dataclass(frozen=True)
class SkipGranted:
    device: int
    channel: int
    t_skip: int


@dataclass(frozen=True)
class TxSuccess:
    device: int
    channel: int
    frames: int
    throughput: float
    lost: int = 0


@dataclass(frozen=True)
class TxCollision:
    device: int
    channel: int
    frames_before_collision: int
    throughput: float = 0.0  # delivered by the frames before the collision
    lost: int = 0


@dataclass(frozen=True)
class TxDeclined:
    device: int
    channel: int


FrameEvent = SensedFree | SensedBusy | SkipGranted | TxSuccess | TxCollision | TxDeclined
TERMINAL_EVENTS = (SensedBusy, TxSuccess, TxCollision, TxDeclined)
