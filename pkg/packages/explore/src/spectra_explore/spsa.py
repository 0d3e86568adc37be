"""SPSA controller for one channel's exploration factor.

The loss L(eps) = (T_int - g)^2 measures how far the collision fraction g seen
while exploring at eps sits from the tolerated fraction T_int. Each iterate
eps_k is evaluated twice, on consecutive collision windows:

  odd count   window ran at eps_k + v_k * delta; store L+
  even count  window ran at eps_k - v_k * delta; form
              grad = (L+ - L-) / (2 v_k delta)
              eps_{k+1} = clamp(eps_k - a_k * grad, 0, 1); k += 1; redraw delta

with gains a_k = (a / k)^alpha and v_k = (v / k)^gamma. The two halves of a
gradient estimate come from different windows, so traffic drift between them
shows up as gradient noise.

g is the share of sensed attempts whose transmission ran into the PU. A window
that inherits an unused residue carries on the idle period the sensed
attempt opened, so its collision is charged to that attempt. Frames lost to
channel error do not end a window and are not counted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from spectra_shared.config_models import SpsaParams

logger = logging.getLogger(__name__)


def draw_perturbation(rng: np.random.Generator) -> int:
    """Symmetric Bernoulli +/-1."""
    return 1 if rng.random() < 0.5 else -1


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


@dataclass
class SpsaState:
    epsilon: float
    a: float
    alpha: float
    v: float
    gamma: float
    t_int: float
    window: int
    delta: int = 1
    k: int = 1
    count: int = 1
    plus_loss: float = 0.0
    window_collisions: int = 0
    window_attempts: int = 0

    @classmethod
    def start(cls, params: SpsaParams, t_int: float, rng: np.random.Generator) -> SpsaState:
        return cls(
            epsilon=params.epsilon0,
            a=params.a,
            alpha=params.alpha,
            v=params.v,
            gamma=params.gamma,
            t_int=t_int,
            window=params.window,
            delta=draw_perturbation(rng),
        )

    @property
    def a_k(self) -> float:
        return (self.a / self.k) ** self.alpha

    @property
    def v_k(self) -> float:
        return (self.v / self.k) ** self.gamma

    @property
    def active_epsilon(self) -> float:
        """The perturbed iterate the current collision window runs at."""
        sign = self.delta if self.count % 2 == 1 else -self.delta
        return _clamp(self.epsilon + self.v_k * sign)

    def loss(self, g: float) -> float:
        return (self.t_int - g) ** 2


def spsa_update(state: SpsaState, g: float, rng: np.random.Generator) -> SpsaState:
    """Feed the collision fraction of the window that just closed."""
    if not 0.0 <= g <= 1.0:
        raise ValueError(f"collision fraction must be in [0, 1], got {g!r}")
    if state.count % 2 == 1:
        state.plus_loss = state.loss(g)
    else:
        minus_loss = state.loss(g)
        v_k = state.v_k
        grad = (state.plus_loss - minus_loss) / (2.0 * v_k * state.delta)
        state.epsilon = _clamp(state.epsilon - state.a_k * grad)
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f"SPSA k={state.k} grad={grad:.4f} epsilon={state.epsilon:.4f}")
        state.k += 1
        state.delta = draw_perturbation(rng)
    state.count += 1
    return state


def record_collision_window(state: SpsaState, collisions: int, opportunities: int) -> float | None:
    """Collision fraction of a closed window; None when nothing was transmitted."""
    if opportunities <= 0:
        return None
    if not 0 <= collisions <= opportunities:
        raise ValueError(f"collisions ({collisions}) must lie in [0, {opportunities}]")
    return collisions / opportunities


def observe_window(
    state: SpsaState, rng: np.random.Generator, *, sensed: bool, collided: bool
) -> bool:
    """Count one closed transmission window; step SPSA once `window` attempts closed.

    Only sensed windows are attempts. Returns True when an SPSA step was consumed.
    """
    state.window_collisions += int(collided)
    if not sensed:
        return False
    state.window_attempts += 1
    if state.window_attempts < state.window:
        return False
    collisions = min(state.window_collisions, state.window_attempts)
    g = record_collision_window(state, collisions, state.window_attempts)
    state.window_collisions = 0
    state.window_attempts = 0
    if g is None:
        return False
    spsa_update(state, g, rng)
    return True
