"""Elastic-band planner: turns the via-point error into a saturated spring
force, then streams a desired state x_d through a double integrator with
velocity saturation.

The spring force is clamped at f_max = m_d * a_max, so the commanded
acceleration never exceeds a_max, and the velocity is clamped before the
position integration, so |v_d| <= v_max holds exactly at every step.  In
"fractal" mode the same saturated spring becomes the divergence profile of
a fractal impedance channel, which makes the band land on the via point
with zero velocity instead of orbiting it.
"""

from __future__ import annotations

import math

from .fic import ChannelState, fic_force
from .util import clamp, wrap_angle

__all__ = ["SaturatedSpring", "BandParams", "Band", "band_force", "band_step"]

MAX_DT = 0.01  # fixed-step regime; larger steps void the saturation contract


class SaturatedSpring:
    """Linear spring clamped at a maximum force: F = clip(k*e, ±f_max)."""

    __slots__ = ("k", "f_max", "f_sat")

    def __init__(self, k: float, f_max: float):
        if k <= 0 or f_max <= 0:
            raise ValueError("k and f_max must be positive")
        self.k = float(k)
        self.f_max = float(f_max)
        self.f_sat = self.f_max

    def evaluate(self, err: float) -> float:
        return clamp(self.k * err, -self.f_max, self.f_max)

    def integral(self, err: float) -> float:
        a = abs(err)
        e_sat = self.f_max / self.k
        if a <= e_sat:
            return 0.5 * self.k * a * a
        return 0.5 * self.f_max * e_sat + self.f_max * (a - e_sat)


class BandParams:
    """Per-DoF planner gains and limits.

    m_d is the apparent inertia the band plans with; it must be at least
    the physical inertia of the matching agent DoF (checked at scenario
    validation, not here, since the band alone does not know the agent).
    """

    __slots__ = ("k", "m_d", "a_max", "v_max", "mode")

    def __init__(self, k: float, m_d: float, a_max: float, v_max: float,
                 mode: str = "plain_spring"):
        if k <= 0 or m_d <= 0 or a_max <= 0 or v_max <= 0:
            raise ValueError("k, m_d, a_max and v_max must all be positive")
        if mode not in ("plain_spring", "fractal"):
            raise ValueError(f"unknown band mode: {mode!r}")
        self.k = float(k)
        self.m_d = float(m_d)
        self.a_max = float(a_max)
        self.v_max = float(v_max)
        self.mode = mode

    @property
    def f_max(self) -> float:
        return self.m_d * self.a_max

    def __eq__(self, other):
        if not isinstance(other, BandParams):
            return NotImplemented
        return (self.k, self.m_d, self.a_max, self.v_max, self.mode) == (
            other.k, other.m_d, other.a_max, other.v_max, other.mode)

    def __repr__(self):
        return (f"BandParams(k={self.k}, m_d={self.m_d}, a_max={self.a_max}, "
                f"v_max={self.v_max}, mode={self.mode!r})")


def band_force(params: BandParams, x_vp: float, x_d: float, angular: bool = False) -> float:
    """Saturated spring force toward the via point for one DoF."""
    err = x_vp - x_d
    if angular:
        err = wrap_angle(err)
    return clamp(params.k * err, -params.f_max, params.f_max)


class Band:
    """Vector band: one BandParams per DoF plus the (x_d, v_d) stream state."""

    __slots__ = ("params", "angular", "x_d", "v_d", "channels", "springs")

    def __init__(self, params: list[BandParams], angular: list[bool], x_d0: list[float]):
        if not (len(params) == len(angular) == len(x_d0)):
            raise ValueError("params, angular and x_d0 must have equal length")
        self.params = params
        self.angular = angular
        self.x_d = [float(v) for v in x_d0]
        self.v_d = [0.0] * len(params)
        self.channels = [ChannelState() for _ in params]
        self.springs = [SaturatedSpring(p.k, p.f_max) for p in params]

    def step(self, x_vp: list[float], dt: float) -> None:
        """Advance the desired-state stream one control step toward x_vp."""
        if not (0.0 < dt <= MAX_DT):
            raise ValueError(f"dt must be in (0, {MAX_DT}] s, got {dt}")
        for i, p in enumerate(self.params):
            err = x_vp[i] - self.x_d[i]
            if self.angular[i]:
                err = wrap_angle(err)
            if p.mode == "fractal":
                ch = self.channels[i]
                ch.advance(err)
                force = fic_force(ch, self.springs[i], err)
            else:
                force = self.springs[i].evaluate(err)
            # Velocity is clamped before the position update so v_max is
            # enforced exactly, not just approached.
            v = clamp(self.v_d[i] + (force / p.m_d) * dt, -p.v_max, p.v_max)
            self.v_d[i] = v
            x = self.x_d[i] + v * dt
            self.x_d[i] = wrap_angle(x) if self.angular[i] else x


def band_step(band: Band, x_vp: list[float], dt: float) -> tuple[list[float], list[float]]:
    """Step the band and return copies of (x_d, v_d)."""
    band.step(x_vp, dt)
    return list(band.x_d), list(band.v_d)
