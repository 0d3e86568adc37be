"""Device-channel quality estimates.

V[c, d] is an exponentially smoothed throughput estimate for device d on
channel c. A failed attempt (busy sensing or a failed window) is reported as
throughput 0, so V also absorbs how often a pairing fails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

# device -> channel, injective on channels
Assignment = dict[int, int]


@dataclass
class ValueTable:
    values: NDArray[np.float64]  # shape (channels, devices)
    kappa: float

    @classmethod
    def zeros(cls, channels: int, devices: int, kappa: float) -> ValueTable:
        if not 0.0 < kappa <= 1.0:
            raise ValueError(f"kappa must be in (0, 1], got {kappa!r}")
        return cls(values=np.zeros((channels, devices)), kappa=kappa)

    @property
    def channels(self) -> int:
        return int(self.values.shape[0])

    @property
    def devices(self) -> int:
        return int(self.values.shape[1])


def update_value(table: ValueTable, device: int, channel: int, throughput: float) -> ValueTable:
    """V[c, d] <- kappa * T + (1 - kappa) * V[c, d]; every other entry is untouched."""
    if not 0 <= device < table.devices:
        raise ValueError(f"unknown device {device}")
    if not 0 <= channel < table.channels:
        raise ValueError(f"unknown channel {channel}")
    if throughput < 0.0:
        raise ValueError(f"throughput must be >= 0, got {throughput!r}")
    v = table.values[channel, device]
    table.values[channel, device] = table.kappa * throughput + (1.0 - table.kappa) * v
    return table


def quality(table: ValueTable, assignment: Assignment) -> float:
    """Sum of V[c, d] over the pairs of an assignment."""
    return float(sum(table.values[c, d] for d, c in assignment.items()))
