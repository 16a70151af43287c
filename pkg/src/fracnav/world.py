"""Fixed-step multi-agent rigid-body world.

Dynamics per agent: accel = T * M^-1 * (W - W_ext) - M^-1 * c * twist,
with diagonal generalized inertia M, optional body->world rotation T, the
control wrench W held constant across one step (zero-order hold of a
discrete controller), and W_ext produced by repulsive potential-field
bubbles around each agent.  Integration is classical fixed-step RK4 with
W_ext and viscous forces re-evaluated at every substep state.

Bubbles generate only positional forces (no torque).  The summed repulsion
per agent is capped at the bubble profile's saturation force so external
wrenches stay bounded no matter how many entities crowd the field.
"""

from __future__ import annotations

import math

from .tracker import RoaProfile
from .util import wrap_angle

__all__ = [
    "AgentBody",
    "Bubble",
    "WallSegment",
    "BoxObstacle",
    "ViscousField",
    "World",
    "SimulationHalt",
    "bubble_wrench",
    "agent_accel",
    "step_world",
]


class SimulationHalt(RuntimeError):
    """Raised when an agent state goes non-finite."""

    def __init__(self, agent: str, step: int, detail: str = ""):
        self.agent = agent
        self.step = step
        super().__init__(f"non-finite state for agent {agent!r} at step {step} {detail}")


class Bubble:
    """Repulsive field around an agent: circular (radius d0) or rectangular
    (half-extents), force magnitude = profile(penetration depth)."""

    __slots__ = ("shape", "d0", "half_extents", "profile")

    def __init__(self, profile: RoaProfile, d0: float = 0.0, half_extents=None, shape: str = "circle"):
        self.shape = shape
        self.profile = profile
        if shape == "circle":
            if d0 <= 0:
                raise ValueError("bubble radius d0 must be positive")
            self.d0 = float(d0)
            self.half_extents = None
        elif shape == "rect":
            if half_extents is None or any(h <= 0 for h in half_extents):
                raise ValueError("bubble half-extents must be positive")
            self.half_extents = [float(h) for h in half_extents]
            self.d0 = max(self.half_extents)  # used as the reach for pairing
        else:
            raise ValueError(f"unknown bubble shape: {shape!r}")


class WallSegment:
    """Thin planar wall between two points (xy only)."""

    __slots__ = ("p0", "p1", "track")

    def __init__(self, p0, p1, track=None):
        self.p0 = [float(v) for v in p0]
        self.p1 = [float(v) for v in p1]
        self.track = track

    def offset_at(self, t: float):
        return _track_offset(self.track, t, len(self.p0))

    def closest_point(self, pos, t: float):
        off = self.offset_at(t)
        ax, ay = self.p0[0] + off[0], self.p0[1] + off[1]
        bx, by = self.p1[0] + off[0], self.p1[1] + off[1]
        dx, dy = bx - ax, by - ay
        seg2 = dx * dx + dy * dy
        if seg2 == 0.0:
            return ax, ay
        u = ((pos[0] - ax) * dx + (pos[1] - ay) * dy) / seg2
        u = 0.0 if u < 0.0 else 1.0 if u > 1.0 else u
        return ax + u * dx, ay + u * dy


class BoxObstacle:
    """Axis-aligned box, 2D (xy) or 3D (xyz), optionally moving on a track."""

    __slots__ = ("lo", "hi", "track")

    def __init__(self, lo, hi, track=None):
        if len(lo) != len(hi) or len(lo) not in (2, 3):
            raise ValueError("box corners must both be 2D or 3D")
        if any(h <= l for l, h in zip(lo, hi)):
            raise ValueError("box upper corner must exceed lower corner")
        self.lo = [float(v) for v in lo]
        self.hi = [float(v) for v in hi]
        self.track = track

    def offset_at(self, t: float):
        return _track_offset(self.track, t, len(self.lo))

    def corners_at(self, t: float):
        off = self.offset_at(t)
        return (
            [l + o for l, o in zip(self.lo, off)],
            [h + o for h, o in zip(self.hi, off)],
        )

    def contains(self, pos, t: float) -> bool:
        lo, hi = self.corners_at(t)
        return all(lo[i] <= pos[i] <= hi[i] for i in range(len(lo)))


def _track_offset(track, t: float, dim: int):
    """Piecewise-linear offset of a scripted obstacle at time t."""
    if not track:
        return (0.0,) * dim
    if t <= track[0][0]:
        return tuple(track[0][1][:dim])
    if t >= track[-1][0]:
        return tuple(track[-1][1][:dim])
    for (t0, p0), (t1, p1) in zip(track, track[1:]):
        if t0 <= t <= t1:
            u = (t - t0) / (t1 - t0)
            return tuple(p0[i] + u * (p1[i] - p0[i]) for i in range(dim))
    return tuple(track[-1][1][:dim])


class ViscousField:
    """Componentwise damping: F = -c * twist, c >= 0 per DoF."""

    __slots__ = ("c",)

    def __init__(self, c):
        if any(v < 0 for v in c):
            raise ValueError("viscous coefficients must be >= 0")
        self.c = [float(v) for v in c]


class AgentBody:
    __slots__ = (
        "name", "kind", "pose", "twist", "inertia",
        "a_max", "v_max", "wrench_max", "wrench_frame", "bubble", "npos",
    )

    def __init__(self, name, kind, pose, inertia, a_max, v_max, wrench_max,
                 bubble=None, wrench_frame="world"):
        n = 3 if kind == "planar" else 6
        if kind not in ("planar", "spatial"):
            raise ValueError(f"unknown agent kind: {kind!r}")
        for label, vec in (("pose", pose), ("inertia", inertia), ("a_max", a_max),
                           ("v_max", v_max), ("wrench_max", wrench_max)):
            if len(vec) != n:
                raise ValueError(f"{label} must have {n} entries for a {kind} agent")
        if any(m <= 0 for m in inertia):
            raise ValueError("inertia diagonal must be positive")
        if wrench_frame not in ("world", "body"):
            raise ValueError(f"unknown wrench frame: {wrench_frame!r}")
        self.name = name
        self.kind = kind
        self.npos = 2 if kind == "planar" else 3
        self.pose = [float(v) for v in pose]
        for i in range(self.npos, n):
            self.pose[i] = wrap_angle(self.pose[i])
        self.twist = [0.0] * n
        self.inertia = [float(v) for v in inertia]
        self.a_max = [float(v) for v in a_max]
        self.v_max = [float(v) for v in v_max]
        self.wrench_max = [float(v) for v in wrench_max]
        self.wrench_frame = wrench_frame
        self.bubble = bubble

    @property
    def n_dofs(self) -> int:
        return len(self.pose)


def _world_rotation(body: AgentBody, pose):
    """Rows of T mapping a body-frame wrench's linear part to world axes."""
    if body.kind == "planar":
        c, s = math.cos(pose[2]), math.sin(pose[2])
        return ((c, -s), (s, c))
    roll, pitch, yaw = pose[3], pose[4], pose[5]
    cr, sr = math.cos(roll), math.sin(roll)
    cp, sp = math.cos(pitch), math.sin(pitch)
    cy, sy = math.cos(yaw), math.sin(yaw)
    # ZYX convention: R = Rz(yaw) Ry(pitch) Rx(roll)
    return (
        (cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr),
        (sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr),
        (-sp, cp * sr, cp * cr),
    )


def agent_accel(body: AgentBody, w, w_ext, pose=None):
    """Generalized acceleration T * M^-1 * (W - W_ext).

    W and W_ext follow the frame declared by the body; with a body frame,
    T rotates the linear block into world axes (angular channels are
    decoupled and frame-independent here).
    """
    pose = body.pose if pose is None else pose
    n = body.n_dofs
    net = [(w[i] - w_ext[i]) / body.inertia[i] for i in range(n)]
    if body.wrench_frame == "body":
        rot = _world_rotation(body, pose)
        npos = body.npos
        lin = [sum(rot[r][c] * net[c] for c in range(npos)) for r in range(npos)]
        net = lin + net[npos:]
    return net


def _held_to_world(agent: AgentBody, w, pose):
    """Held control wrench expressed in world axes for the integrator."""
    if agent.wrench_frame != "body":
        return w
    rot = _world_rotation(agent, pose)
    npos = agent.npos
    lin = [sum(rot[r][c] * w[c] for c in range(npos)) for r in range(npos)]
    return lin + list(w[npos:])


def _obstacle_repulsion(world: "World", idx: int, pos, t: float, out) -> None:
    """Accumulate obstacle contributions into the positional slots of out."""
    agent = world.agents[idx]
    bubble = agent.bubble
    npos = agent.npos
    profile = bubble.profile
    for k, obs in enumerate(world.obstacles):
        if isinstance(obs, WallSegment):
            if npos != 2:
                continue
            cx, cy = obs.closest_point(pos, t)
            sep = [pos[0] - cx, pos[1] - cy]
            dist = math.hypot(sep[0], sep[1])
        else:
            lo, hi = obs.corners_at(t)
            m = len(lo)
            nearest = [min(max(pos[i], lo[i]), hi[i]) for i in range(m)]
            sep = [pos[i] - nearest[i] for i in range(min(npos, m))]
            if m < npos:
                sep += [0.0] * (npos - m)
            dist = math.sqrt(sum(s * s for s in sep))
            if dist <= 1e-12 and obs.contains(pos, t):
                # inside the box: push out along the cheapest axis
                gaps = [(min(pos[i] - lo[i], hi[i] - pos[i]), i) for i in range(m)]
                _, ax = min(gaps)
                sep = [0.0] * npos
                sep[ax] = 1.0 if (pos[ax] - lo[ax]) > (hi[ax] - pos[ax]) else -1.0
                dist = 0.0
                world._last_dir[(idx, ("obs", k))] = sep
        if bubble.shape == "rect":
            reach, sep, dist = _rect_field(bubble, sep, dist)
            if reach is None:
                continue
        else:
            reach = bubble.d0
        _add_repulsion(world, idx, ("obs", k), profile, sep, dist, reach, npos, out)


def _add_repulsion(world, idx, key, profile, sep, dist, reach, npos, out) -> None:
    # sep points from the entity toward the agent (outward).
    if dist >= reach:
        return
    if dist > 1e-12:
        ux = [s / dist for s in sep]
        world._last_dir[(idx, key)] = ux
    else:
        ux = world._last_dir.get((idx, key))
        if ux is None:
            ux = [0.0] * npos
            ux[0] = 1.0
    mag = profile.evaluate(reach - dist)
    for i in range(npos):
        out[i] += mag * ux[i]


def _agent_repulsion(world: "World", idx: int, poses, out) -> None:
    """Accumulate other-agent contributions (scalar reference path)."""
    agent = world.agents[idx]
    bubble = agent.bubble
    npos = agent.npos
    pos = poses[idx]
    profile = bubble.profile
    for j, other in enumerate(world.agents):
        if j == idx:
            continue
        opos = poses[j]
        sep = [pos[i] - opos[i] for i in range(npos)]
        dist = math.sqrt(sum(s * s for s in sep))
        if bubble.shape == "rect":
            reach, sep, dist = _rect_field(bubble, sep, dist)
            if reach is None:
                continue
        else:
            # pair reach: the larger of the two bubbles dominates, so an
            # enlarged (e.g. predator) field keeps everyone at its range
            reach = bubble.d0
            ob = other.bubble
            if ob is not None and ob.d0 > reach:
                reach = ob.d0
        _add_repulsion(world, idx, ("agent", j), profile, sep, dist, reach, npos, out)


def _cap_norm(out, npos: int, f_sat: float) -> None:
    norm = math.sqrt(sum(out[i] * out[i] for i in range(npos)))
    if norm > f_sat:
        scale = f_sat / norm
        for i in range(npos):
            out[i] *= scale


def bubble_wrench(world: "World", idx: int, poses=None, t: float = 0.0):
    """Summed repulsive wrench on agent idx from obstacles and other agents.

    Returned with the repulsive (outward) sign; the dynamics subtract its
    negation as W_ext so that (W - W_ext) repels.  The positional norm is
    capped at the bubble profile's saturation force.
    """
    agent = world.agents[idx]
    bubble = agent.bubble
    out = [0.0] * len(agent.pose)
    if bubble is None:
        return out
    poses = poses if poses is not None else [a.pose for a in world.agents]
    _obstacle_repulsion(world, idx, poses[idx], t, out)
    _agent_repulsion(world, idx, poses, out)
    _cap_norm(out, agent.npos, bubble.profile.f_max)
    return out


def _rect_field(bubble: Bubble, sep, dist):
    """Penetration of a rectangular field: depth along the cheapest axis.

    Returns (reach, axis_sep, axis_dist) or (None, ..) when outside.
    """
    hx = bubble.half_extents
    m = len(hx)
    gaps = []
    for i in range(m):
        g = hx[i] - abs(sep[i])
        if g <= 0.0:
            return None, sep, dist
        gaps.append((g, i))
    _, ax = min(gaps)
    axis_sep = [0.0] * len(sep)
    axis_sep[ax] = 1.0 if sep[ax] >= 0.0 else -1.0
    return hx[ax], axis_sep, abs(sep[ax])


class World:
    """All agents, obstacles and the viscous field, advanced in lock-step."""

    def __init__(self, agents, obstacles=None, viscous: ViscousField | None = None):
        if not agents:
            raise ValueError("world needs at least one agent")
        kinds = {a.kind for a in agents}
        if len(kinds) > 1:
            raise ValueError("all agents in one world must share a kind")
        names = [a.name for a in agents]
        if len(set(names)) != len(names):
            raise ValueError("agent names must be unique")
        self.agents = list(agents)
        self.obstacles = list(obstacles or [])
        n = agents[0].n_dofs
        self.viscous = viscous or ViscousField([0.0] * n)
        if len(self.viscous.c) != n:
            raise ValueError("viscous field dimension must match agent DoF count")
        self.t = 0.0
        self.step_count = 0
        self._last_dir = {}
        self._bulk = self._build_bulk() if len(self.agents) >= 4 else None

    def _build_bulk(self):
        """Precompute pair-reach and profile parameter arrays for the
        vectorized agent-agent field evaluation (circle bubbles only)."""
        import numpy as np

        bubbles = [a.bubble for a in self.agents]
        if any(b is None or b.shape != "circle" for b in bubbles):
            return None
        n = len(bubbles)
        d0 = np.array([b.d0 for b in bubbles])
        reach = np.maximum(d0[:, None], d0[None, :])
        np.fill_diagonal(reach, 0.0)
        col = lambda attr: np.array([getattr(b.profile, attr) for b in bubbles])[:, None]
        params = (col("k0"), col("x0"), col("xb"), col("delta_f"), col("b"), col("f_max"))
        return (reach, params, self.agents[0].npos, n)

    def _agent_repulsion_bulk(self, poses):
        import numpy as np

        reach, (k0, x0, xb, delta_f, b, f_max), npos, n = self._bulk
        pos = np.array([p[:npos] for p in poses])
        sep = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt(np.einsum("ijk,ijk->ij", sep, sep))
        mask = dist < reach
        if not mask.any():
            return np.zeros((n, npos))
        if (dist[mask] <= 1e-12).any():
            return None  # coincident pair: defer to the scalar path
        pen = np.where(mask, reach - dist, 0.0)
        safe = np.where(pen > x0, pen, x0)
        mid = delta_f * (1.0 - np.exp(-(safe - x0) / b)) + k0 * x0
        mag = np.where(pen < x0, k0 * pen, np.where(pen >= xb, f_max, mid))
        mag = np.where(mask, mag, 0.0)
        inv = np.where(mask, 1.0 / np.where(mask, dist, 1.0), 0.0)
        return np.einsum("ij,ijk->ik", mag * inv, sep)

    def external_wrenches(self, poses=None, t=None):
        """Repulsive wrench per agent (outward sign)."""
        t = self.t if t is None else t
        poses = poses if poses is not None else [a.pose for a in self.agents]
        n = len(self.agents)
        if self._bulk is not None:
            pair = self._agent_repulsion_bulk(poses)
            if pair is not None:
                out = []
                for i, agent in enumerate(self.agents):
                    row = [0.0] * len(agent.pose)
                    npos = agent.npos
                    for k in range(npos):
                        row[k] = float(pair[i, k])
                    _obstacle_repulsion(self, i, poses[i], t, row)
                    _cap_norm(row, npos, agent.bubble.profile.f_max)
                    out.append(row)
                return out
        return [bubble_wrench(self, i, poses, t) for i in range(n)]

    def _derivs(self, poses, twists, t, rep=None):
        if rep is None:
            rep = self.external_wrenches(poses, t)
        c = self.viscous.c
        accels = []
        for i, a in enumerate(self.agents):
            n = len(a.pose)
            w = self._held_wrench[i]
            if a.wrench_frame == "body":
                w = _held_to_world(a, w, poses[i])
            tw = twists[i]
            # W_ext enters the equation of motion with the attractive sign;
            # rep carries the repulsive sign, so the net force is W + rep.
            inertia = a.inertia
            ri = rep[i]
            accels.append(
                [(w[k] + ri[k] - c[k] * tw[k]) / inertia[k] for k in range(n)]
            )
        return accels

    def advance(self, wrenches, dt: float):
        """One RK4 step of all agents under held control wrenches.

        Returns the W_ext (attractive sign, as subtracted by the dynamics)
        evaluated at the pre-step state, for logging.
        """
        if dt <= 0:
            raise ValueError("dt must be positive")
        agents = self.agents
        n_agents = len(agents)
        self._held_wrench = [list(w) for w in wrenches]
        t0 = self.t

        p0 = [list(a.pose) for a in agents]
        v0 = [list(a.twist) for a in agents]
        rep0 = self.external_wrenches(p0, t0)

        a1 = self._derivs(p0, v0, t0, rep0)
        h = 0.5 * dt
        p2 = [[p0[i][k] + h * v0[i][k] for k in range(len(p0[i]))] for i in range(n_agents)]
        v2 = [[v0[i][k] + h * a1[i][k] for k in range(len(v0[i]))] for i in range(n_agents)]
        a2 = self._derivs(p2, v2, t0 + h)
        p3 = [[p0[i][k] + h * v2[i][k] for k in range(len(p0[i]))] for i in range(n_agents)]
        v3 = [[v0[i][k] + h * a2[i][k] for k in range(len(v0[i]))] for i in range(n_agents)]
        a3 = self._derivs(p3, v3, t0 + h)
        p4 = [[p0[i][k] + dt * v3[i][k] for k in range(len(p0[i]))] for i in range(n_agents)]
        v4 = [[v0[i][k] + dt * a3[i][k] for k in range(len(v0[i]))] for i in range(n_agents)]
        a4 = self._derivs(p4, v4, t0 + dt)

        sixth = dt / 6.0
        for i, agent in enumerate(agents):
            n = len(agent.pose)
            pose = agent.pose
            twist = agent.twist
            for k in range(n):
                pose[k] = p0[i][k] + sixth * (
                    v0[i][k] + 2.0 * v2[i][k] + 2.0 * v3[i][k] + v4[i][k]
                )
                twist[k] = v0[i][k] + sixth * (
                    a1[i][k] + 2.0 * a2[i][k] + 2.0 * a3[i][k] + a4[i][k]
                )
            for k in range(agent.npos, n):
                pose[k] = wrap_angle(pose[k])
            for k in range(n):
                if not (math.isfinite(pose[k]) and math.isfinite(twist[k])):
                    raise SimulationHalt(agent.name, self.step_count, f"(DoF {k})")

        self.t = t0 + dt
        self.step_count += 1
        # logged W_ext carries the attractive sign of the equation of motion
        return [[-v for v in r] for r in rep0]


def step_world(world: World, controllers, dt: float):
    """Query one wrench per agent from `controllers`, then advance the world.

    Each controller is called as controller(agent, t) and must return the
    control wrench for that agent; the wrench is held across the step.
    """
    wrenches = [ctrl(agent, world.t) for ctrl, agent in zip(controllers, world.agents)]
    return world.advance(wrenches, dt)
