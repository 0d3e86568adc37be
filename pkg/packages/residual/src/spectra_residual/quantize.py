"""Continuous duration -> skip class in 1..K."""

from __future__ import annotations

import math


def quantize(tau: float, support: int) -> tuple[int, bool]:
    """Round half up and clamp to [1, support]; the flag reports clamping at the top."""
    k = math.floor(tau + 0.5)
    if k > support:
        return support, True
    return max(k, 1), False
