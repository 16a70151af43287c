"""Per-DoF fractal impedance channel: phase tracking, force law, stored energy.

A fractal impedance channel watches one scalar tracking error e = x_d - x.
While |e| grows (divergence) it pushes back with a bounded odd force
profile F(e).  When |e| starts shrinking (convergence) it switches to a
linear spring centred on the midpoint of the peak displacement, so an
undamped mass released at the peak performs a half-period harmonic arc
and lands on the target with zero velocity - critically damped behaviour
without any damping term.  Each new divergence episode re-bases the peak
memory, which is what makes the attractor self-similar across energy
levels.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Protocol

from scipy.integrate import quad

__all__ = [
    "Phase",
    "ForceProfile",
    "LinearProfile",
    "ChannelState",
    "update_phase",
    "fic_force",
    "stored_energy",
]


class Phase(Enum):
    DIVERGENCE = "divergence"
    CONVERGENCE = "convergence"


class ForceProfile(Protocol):
    """Odd, continuous, monotone non-decreasing force law bounded by f_sat."""

    f_sat: float

    def evaluate(self, err: float) -> float: ...

    def integral(self, err: float) -> float:
        """Closed-form ∫₀^|err| evaluate(s) ds, used for fast energy logging."""
        ...


class LinearProfile:
    """Unbounded linear spring F = k*e.  Test and analysis profile only:
    it deliberately has no finite saturation (f_sat = inf)."""

    def __init__(self, k: float):
        if k <= 0:
            raise ValueError("stiffness must be positive")
        self.k = float(k)
        self.f_sat = math.inf

    def evaluate(self, err: float) -> float:
        return self.k * err

    def integral(self, err: float) -> float:
        return 0.5 * self.k * err * err


class ChannelState:
    """Attractor phase and peak-displacement memory for one DoF.

    x_max is the maximum |e| of the *current* divergence episode; it
    re-bases when a new episode starts and resets when e crosses zero.
    peak_sign remembers the sign of the error at the episode peak so the
    convergence spring is well defined for negative errors (0 = unset).
    """

    __slots__ = ("phase", "x_max", "prev_abs_err", "hysteresis_eps", "peak_sign")

    def __init__(
        self,
        phase: Phase = Phase.CONVERGENCE,
        x_max: float = 0.0,
        prev_abs_err: float = 0.0,
        hysteresis_eps: float = 1e-6,
        peak_sign: int = 0,
    ):
        if x_max < 0 or prev_abs_err < 0 or hysteresis_eps < 0:
            raise ValueError("x_max, prev_abs_err and hysteresis_eps must be >= 0")
        self.phase = phase
        self.x_max = x_max
        self.prev_abs_err = prev_abs_err
        self.hysteresis_eps = hysteresis_eps
        self.peak_sign = peak_sign

    def copy(self) -> "ChannelState":
        c = ChannelState.__new__(ChannelState)
        c.phase = self.phase
        c.x_max = self.x_max
        c.prev_abs_err = self.prev_abs_err
        c.hysteresis_eps = self.hysteresis_eps
        c.peak_sign = self.peak_sign
        return c

    def __eq__(self, other):
        if not isinstance(other, ChannelState):
            return NotImplemented
        return (
            self.phase is other.phase
            and self.x_max == other.x_max
            and self.prev_abs_err == other.prev_abs_err
            and self.hysteresis_eps == other.hysteresis_eps
            and self.peak_sign == other.peak_sign
        )

    def __repr__(self):
        return (
            f"ChannelState({self.phase.value}, x_max={self.x_max!r}, "
            f"prev={self.prev_abs_err!r}, sign={self.peak_sign})"
        )

    # In-place transition; update_phase() wraps this with value semantics.
    def advance(self, err: float) -> None:
        if not math.isfinite(err):
            raise ValueError(f"non-finite tracking error: {err!r}")
        eps = self.hysteresis_eps
        abs_err = abs(err)
        sign = 0 if err == 0.0 else (1 if err > 0.0 else -1)

        if (self.peak_sign != 0 and sign != 0 and sign != self.peak_sign) or abs_err <= eps:
            # Zero crossing: the attractor cycle completed, start fresh here.
            self.x_max = abs_err
            self.phase = Phase.CONVERGENCE
            self.peak_sign = sign
        elif abs_err > self.x_max or abs_err > self.prev_abs_err + eps:
            if self.phase is Phase.DIVERGENCE:
                self.x_max = max(self.x_max, abs_err)
            else:
                # New divergence episode: peak memory re-bases to the
                # current displacement instead of keeping the old maximum
                # (otherwise any energy shed mid-return, e.g. by velocity
                # saturation or viscous drag, parks the channel on the
                # midpoint equilibrium and it never reaches the target).
                self.phase = Phase.DIVERGENCE
                self.x_max = abs_err
            self.peak_sign = sign
        elif abs_err < self.prev_abs_err - eps:
            self.phase = Phase.CONVERGENCE

        self.prev_abs_err = abs_err


def update_phase(state: ChannelState, err: float) -> ChannelState:
    """Return the channel state advanced by one observation of the error."""
    new = state.copy()
    new.advance(err)
    return new


def fic_force(state: ChannelState, profile: ForceProfile, err: float) -> float:
    """Force output of the channel, assuming state was advanced for this err.

    Divergence applies the profile directly.  Convergence applies the
    linear spring (F(x_max)/x_max)*(2|e| - x_max) carrying the sign of the
    episode peak; the branches agree at |e| = x_max.
    """
    if state.phase is Phase.DIVERGENCE:
        return profile.evaluate(err)
    x_max = state.x_max
    if x_max <= 0.0:
        return 0.0
    peak_force = profile.evaluate(x_max)
    return (peak_force / x_max) * (2.0 * abs(err) - x_max) * state.peak_sign


def stored_energy(profile: ForceProfile, state: ChannelState, err: float) -> float:
    """Potential energy held by the channel at error err.

    Divergence integrates the profile numerically (adaptive quadrature,
    1e-9 relative tolerance).  Convergence evaluates the midpoint-spring
    energy, offset so the two branches agree at |e| = x_max.
    """
    abs_err = abs(err)
    if state.phase is Phase.DIVERGENCE:
        if abs_err == 0.0:
            return 0.0
        val, _ = quad(profile.evaluate, 0.0, abs_err, epsabs=1e-12, epsrel=1e-9)
        return val
    x_max = state.x_max
    if x_max <= 0.0:
        return 0.0
    peak, _ = quad(profile.evaluate, 0.0, x_max, epsabs=1e-12, epsrel=1e-9)
    k_mid = profile.evaluate(x_max) / x_max
    half = 0.5 * x_max
    return peak + k_mid * ((abs_err - half) ** 2 - half**2)


def convergence_energy(profile: ForceProfile, x_max: float, abs_err: float) -> float:
    """Closed-form convergence-branch energy using the profile's own integral."""
    if x_max <= 0.0:
        return 0.0
    peak = profile.integral(x_max)
    k_mid = profile.evaluate(x_max) / x_max
    half = 0.5 * x_max
    return peak + k_mid * ((abs_err - half) ** 2 - half**2)
