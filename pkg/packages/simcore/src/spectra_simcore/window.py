"""Frame-level transmission physics.

transmit_frame resolves one frame [clock, frame_end) on a channel an SU is
transmitting on. The frame collides if the PU is Active at its start or
switches on before its end; the PU is then notified and retransmits, and the
SU's window ends there. A frame free of PU activity is lost independently
with the channel-error probability, but the window carries on.
"""

from __future__ import annotations

from enum import StrEnum

import numpy as np
from spectra_shared.config_models import RadioConfig
from spectra_traffic.pu_process import (
    PuProcess,
    advance_pu_to,
    first_activity,
    notify_collision,
)

from spectra_simcore.events import TxCollision, TxSuccess
from spectra_simcore.radio import channel_error


class FrameOutcome(StrEnum):
    OK = "ok"
    PU = "pu"
    CHANNEL_ERROR = "channel_error"


def transmit_frame(
    pu: PuProcess, frame_end: float, radio: RadioConfig, rng: np.random.Generator
) -> FrameOutcome:
    """Resolve one SU frame and advance the PU to `frame_end`."""
    onset = first_activity(pu, frame_end - pu.clock)
    if onset is None:
        advance_pu_to(pu, frame_end)
        return FrameOutcome.CHANNEL_ERROR if channel_error(radio, rng) else FrameOutcome.OK
    if onset > 0.0:
        advance_pu_to(pu, pu.next_switch)
    notify_collision(pu)
    advance_pu_to(pu, frame_end)
    return FrameOutcome.PU


def frame_throughput(capacity: float, radio: RadioConfig, *, carries_sensing: bool) -> float:
    return capacity * (1.0 - radio.sensing_overhead) if carries_sensing else capacity


def transmit_window(
    device: int,
    channel: int,
    t_skip: int,
    payload: int,
    pu: PuProcess,
    radio: RadioConfig,
    capacity: float,
    rng: np.random.Generator,
    *,
    sensed: bool = True,
) -> TxSuccess | TxCollision:
    """Run one device's window of min(t_skip, payload) frames without re-sensing.

    This is the whole-window view of what the engine does one transmit_frame
    call per frame, for a window that has a channel to itself. Throughput is
    the sum over delivered frames; a channel-error frame delivers nothing.
    """
    if t_skip < 1:
        raise ValueError(f"t_skip must be >= 1, got {t_skip}")
    frames = min(t_skip, payload)
    start = pu.clock
    throughput = 0.0
    lost = 0
    for i in range(frames):
        outcome = transmit_frame(pu, start + i + 1, radio, rng)
        if outcome is FrameOutcome.PU:
            return TxCollision(
                device=device,
                channel=channel,
                frames_before_collision=i,
                throughput=throughput,
                lost=lost,
            )
        if outcome is FrameOutcome.OK:
            throughput += frame_throughput(capacity, radio, carries_sensing=sensed and i == 0)
        else:
            lost += 1
    return TxSuccess(
        device=device, channel=channel, frames=frames, throughput=throughput, lost=lost
    )
