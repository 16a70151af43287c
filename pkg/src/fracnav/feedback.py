"""Degraded feedback: zero-order-hold sampling of agent state.

The channel captures the true (pose, twist) only on its sampling grid and
holds the last capture between grid points, so controllers downstream see
stale state when the rate is below the control rate.  No extrapolation and
no estimator; velocity is held alongside pose.
"""

from __future__ import annotations

import math

__all__ = ["ZohChannel"]

_GRID_EPS = 1e-12  # absorbs float accumulation error in t vs the sample grid


class ZohChannel:
    __slots__ = ("rate", "period", "_held", "_last_sample_t", "_last_call_t")

    def __init__(self, rate: float):
        if rate <= 0:
            raise ValueError("sampling rate must be positive")
        self.rate = float(rate)
        self.period = 1.0 / self.rate
        self._held = None
        self._last_sample_t = None
        self._last_call_t = -math.inf

    def sample(self, truth: tuple[list[float], list[float]], t: float):
        """Return the held (pose, twist), capturing truth on grid points."""
        if t < self._last_call_t - _GRID_EPS:
            raise ValueError(f"time regression: {t} after {self._last_call_t}")
        self._last_call_t = t
        if self._last_sample_t is None or t >= self._last_sample_t + self.period - _GRID_EPS:
            pose, twist = truth
            self._held = (list(pose), list(twist))
            # snap to the latest grid point <= t so holds stay aligned
            self._last_sample_t = math.floor(t * self.rate + _GRID_EPS) * self.period
        return self._held
