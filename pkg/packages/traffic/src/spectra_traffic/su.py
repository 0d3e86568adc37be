"""SU (IoT device) payload demand.

Two traffic classes:
  - Periodic: SU_ON frames every SU_interval frames. Devices are phase-shifted
    by a per-device offset so a population does not fire in lockstep.
  - Event-driven: an alarm fires with probability P_alarm per frame while the
    device is idle; the burst lasts Exponential(mean 1/lambda) frames, rounded
    up, at least one frame.
"""

from __future__ import annotations

import math

import numpy as np
from spectra_shared.config_models import EventDrivenTraffic, PeriodicTraffic


def su_generate(
    params: PeriodicTraffic | EventDrivenTraffic,
    frame_index: int,
    rng: np.random.Generator,
) -> int:
    """Payload (whole frames) a device produces at `frame_index`, possibly zero.

    Event-driven devices must only be asked while idle; periodic devices are
    asked every frame and accumulate bursts that arrive while still busy.
    """
    if frame_index < 0:
        raise ValueError(f"frame_index must be >= 0, got {frame_index}")
    match params:
        case PeriodicTraffic():
            return params.on_frames if frame_index % params.interval_frames == 0 else 0
        case EventDrivenTraffic():
            if rng.random() >= params.alarm_probability:
                return 0
            return max(1, math.ceil(rng.exponential(params.mean_on_frames)))


def periodic_phase(params: PeriodicTraffic | EventDrivenTraffic, rng: np.random.Generator) -> int:
    """Per-device frame offset added to the frame index of periodic devices."""
    if isinstance(params, PeriodicTraffic):
        return int(rng.integers(params.interval_frames))
    return 0
