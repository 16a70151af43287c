"""Scenario execution: assemble runtime objects, run the control/physics
loop, log trajectories, compute run summaries, and benchmark scaling."""

from __future__ import annotations

import math
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .band import Band, BandParams
from .feedback import ZohChannel
from .metrics import TrajectoryLog, peak_momentum, peak_power, rmse
from .scenario import Scenario
from .tracker import RoaProfile, Tracker
from .util import angular_mask, dof_names
from .viaplan import ViaPlan, ViaSequencer
from .world import AgentBody, BoxObstacle, Bubble, ViscousField, WallSegment, World

__all__ = ["AgentRuntime", "RunResult", "assemble", "run_scenario", "write_outputs", "bench"]


class AgentRuntime:
    """Planner stack for one agent: feedback hold, sequencer, band, tracker."""

    __slots__ = ("body", "band", "tracker", "sequencer", "zoh", "spec")

    def __init__(self, body, band, tracker, sequencer, zoh, spec):
        self.body = body
        self.band = band
        self.tracker = tracker
        self.sequencer = sequencer
        self.zoh = zoh
        self.spec = spec

    def control(self, t: float, dt: float):
        """One control step: returns (x_vp, x_d, wrench)."""
        pose, _twist = self.zoh.sample((self.body.pose, self.body.twist), t)
        x_vp = self.sequencer.current_target(pose, t)
        self.band.step(x_vp, dt)
        w = self.tracker.wrench(self.band.x_d, pose)
        return x_vp, list(self.band.x_d), w

    def stored_energy(self) -> float:
        return self.tracker.stored_energy() + _band_energy(self.band)


def _band_energy(band: Band) -> float:
    from .fic import Phase, convergence_energy

    total = 0.0
    for ch, spring, p in zip(band.channels, band.springs, band.params):
        if p.mode != "fractal":
            continue
        if ch.phase is Phase.DIVERGENCE:
            total += spring.integral(ch.prev_abs_err)
        else:
            total += convergence_energy(spring, ch.x_max, ch.prev_abs_err)
    return total


def _resolve_vias(plan_spec, agent_idx: int, plan_idx: int, sc: Scenario):
    vias = [list(v) for v in plan_spec.vias]
    if plan_spec.random_count:
        rng = np.random.default_rng([sc.seed, agent_idx, plan_idx])
        npos = 2 if sc.kind == "planar" else 3
        pts = rng.uniform(plan_spec.random_lo, plan_spec.random_hi,
                          (plan_spec.random_count, npos))
        pad = sc.n_dofs - npos
        vias += [[float(v) for v in row] + [0.0] * pad for row in pts]
    return vias


def assemble(sc: Scenario):
    """Build the world and per-agent planner stacks from a scenario."""
    n = sc.n_dofs
    ang = list(angular_mask(sc.kind))
    obstacles = []
    for o in sc.obstacles:
        track = [(t, list(off)) for t, off in o.track] or None
        if o.shape == "wall":
            obstacles.append(WallSegment(o.p0, o.p1, track))
        else:
            obstacles.append(BoxObstacle(o.lo, o.hi, track))
    for g in sc.gates:
        for piece in g.frame_boxes():
            obstacles.append(BoxObstacle(piece.lo, piece.hi))

    bodies = []
    runtimes = []
    for ai, a in enumerate(sc.agents):
        bubble = None
        if a.bubble is not None:
            profile = RoaProfile(a.bubble.k0, a.bubble.x0, a.bubble.xb, a.bubble.f_max)
            if a.bubble.shape == "circle":
                bubble = Bubble(profile, d0=a.bubble.d0)
            else:
                bubble = Bubble(profile, half_extents=a.bubble.half_extents, shape="rect")
        body = AgentBody(a.name, sc.kind, a.start, a.inertia, a.a_max, a.v_max,
                         a.wrench_max, bubble=bubble, wrench_frame=a.wrench_frame)
        bodies.append(body)

        params = [
            BandParams(a.band.k[i], a.band.m_d[i], a.band.a_max[i], a.band.v_max[i],
                       a.band.mode)
            for i in range(n)
        ]
        xd0 = a.xd_start if a.xd_start is not None else a.start
        band = Band(params, ang, xd0)
        profiles = [
            RoaProfile(a.tracker.k0[i], a.tracker.x0[i], a.tracker.xb[i], a.tracker.f_max[i])
            for i in range(n)
        ]
        tracker = Tracker(profiles, ang)
        first = a.plans[0]
        plan = ViaPlan(
            vias=_resolve_vias(first, ai, 0, sc),
            r_trig=first.r_trig,
            yaw_mode=first.yaw_mode,
            schedule=[
                (p.start_time, _resolve_vias(p, ai, pi, sc))
                for pi, p in enumerate(a.plans[1:], start=1)
            ],
        )
        sequencer = ViaSequencer(plan, n)
        zoh = ZohChannel(a.feedback_hz)
        runtimes.append(AgentRuntime(body, band, tracker, sequencer, zoh, a))

    viscous = ViscousField(sc.viscous) if sc.viscous is not None else None
    world = World(bodies, obstacles, viscous)
    return world, runtimes


@dataclass
class RunResult:
    scenario: Scenario
    log: TrajectoryLog | None
    summary: dict
    energy: np.ndarray | None = None
    halted: bool = False
    halt_message: str = ""


def run_scenario(sc: Scenario, parallel: bool = False, collect_log: bool = True,
                 collect_energy: bool = False) -> RunResult:
    """Execute the scenario and return the trajectory log plus summary."""
    from .world import SimulationHalt

    world, runtimes = assemble(sc)
    dt = sc.dt
    n_steps = sc.n_steps
    log = TrajectoryLog(dt * sc.log_every, {a.name: sc.kind for a in sc.agents}) if collect_log else None
    energies = [] if collect_energy else None
    pool = ThreadPoolExecutor(max_workers=min(8, len(runtimes))) if parallel else None

    halted = False
    halt_message = ""
    t_start = time.perf_counter()
    try:
        for step in range(n_steps):
            t = step * dt
            if pool is not None:
                controls = list(pool.map(lambda r: r.control(t, dt), runtimes))
            else:
                controls = [r.control(t, dt) for r in runtimes]
            pre_pose = [list(r.body.pose) for r in runtimes]
            pre_twist = [list(r.body.twist) for r in runtimes]
            if energies is not None:
                # sampled right after the controller update: the stored
                # energy of the just-selected branch at the pre-step error
                # pairs with the pre-step kinetic energy
                kinetic = sum(
                    0.5 * m * v * v
                    for r in runtimes
                    for m, v in zip(r.body.inertia, r.body.twist)
                )
                stored = sum(r.stored_energy() for r in runtimes)
                energies.append((t, kinetic, stored))
            try:
                w_ext = world.advance([c[2] for c in controls], dt)
            except SimulationHalt as halt:
                halted = True
                halt_message = str(halt)
                break
            if log is not None and step % sc.log_every == 0:
                for i, r in enumerate(runtimes):
                    x_vp, x_d, w = controls[i]
                    log.append(r.body.name, x_vp + x_d + pre_pose[i] + pre_twist[i]
                               + list(w) + list(w_ext[i]))
    finally:
        if pool is not None:
            pool.shutdown()
    wall = time.perf_counter() - t_start

    if log is not None:
        log.finish()
    summary = _summarize(sc, world, runtimes, log, wall, halted, halt_message)
    energy = np.asarray(energies) if energies else None
    return RunResult(sc, log, summary, energy, halted, halt_message)


def _summarize(sc, world, runtimes, log, wall, halted, halt_message) -> dict:
    s: dict = {
        "scenario": sc.name,
        "steps": world.step_count,
        "dt": sc.dt,
        "seed": sc.seed,
        "wall_clock_s": round(wall, 4),
        "halted": halted,
    }
    if halted:
        s["halt"] = halt_message
    for r in runtimes:
        name = r.body.name
        seq = r.sequencer
        s[f"agent.{name}.vias_total"] = len(seq.vias)
        s[f"agent.{name}.vias_reached"] = seq.cursor + 1
        s[f"agent.{name}.via_advances"] = seq.advances
        final_via = seq.vias[-1]
        npos = r.body.npos
        err = math.sqrt(sum((final_via[i] - r.body.pose[i]) ** 2 for i in range(npos)))
        s[f"agent.{name}.final_error"] = err
        if log is not None and log.n_steps > 1:
            track = rmse(log, "x_d", "x", agent=name)
            for dof, v in zip(dof_names(sc.kind), track):
                s[f"agent.{name}.rmse.{dof}"] = float(v)
            s[f"agent.{name}.q_max"] = peak_momentum(log, r.body.inertia, agent=name)
            s[f"agent.{name}.p_max"] = peak_power(log, r.body.inertia, agent=name)
    if log is not None and log.n_steps > 1:
        s["wall_penetrations"] = wall_penetrations(sc, log)
        if sc.gates:
            crossed, ordered = gate_crossings(sc, log)
            s["gates_crossed"] = crossed
            s["gates_in_order"] = ordered
    return s


def wall_penetrations(sc: Scenario, log: TrajectoryLog) -> int:
    """Post-run check: logged positions inside boxes or stepping across walls."""
    count = 0
    boxes = [BoxObstacle(o.lo, o.hi, [(t, list(off)) for t, off in o.track] or None)
             for o in sc.obstacles if o.shape == "box"]
    for g in sc.gates:
        boxes += [BoxObstacle(p.lo, p.hi) for p in g.frame_boxes()]
    walls = [o for o in sc.obstacles if o.shape == "wall"]
    t_grid = log.t
    for name in log.data:
        pos = log.data[name]["x"]
        for b in boxes:
            for i, t in enumerate(t_grid):
                if b.contains(pos[i], float(t)):
                    count += 1
        for w in walls:
            p0 = np.asarray(w.p0)
            p1 = np.asarray(w.p1)
            a = pos[:-1, :2]
            bposes = pos[1:, :2]
            count += int(np.sum(_segments_cross(a, bposes, p0, p1)))
    return count


def _segments_cross(a, b, p0, p1) -> np.ndarray:
    """Vectorized proper-intersection test of steps a->b vs segment p0->p1."""
    d = p1 - p0

    def side(pts):
        return d[0] * (pts[:, 1] - p0[1]) - d[1] * (pts[:, 0] - p0[0])

    s1 = side(a)
    s2 = side(b)
    e = b - a
    cr = e[:, 0] * (p0[1] - a[:, 1]) - e[:, 1] * (p0[0] - a[:, 0])
    cr2 = e[:, 0] * (p1[1] - a[:, 1]) - e[:, 1] * (p1[0] - a[:, 0])
    return (s1 * s2 < 0) & (cr * cr2 < 0)


def gate_crossings(sc: Scenario, log: TrajectoryLog):
    """Count gates crossed through their aperture in the required direction;
    report whether first crossings happen in gate order."""
    crossed = 0
    first_times = []
    name = next(iter(log.data))
    pos = log.data[name]["x"]
    t = log.t
    for g in sc.gates:
        axis = 0 if g.normal == "x" else 1
        u_axis = 1 if g.normal == "x" else 0
        cn = g.center[axis]
        side = (pos[:, axis] - cn) * g.direction
        upos = pos[:, u_axis]
        zpos = pos[:, 2]
        uc = g.center[u_axis]
        zc = g.center[2]
        hits = np.flatnonzero((side[:-1] < 0) & (side[1:] >= 0)
                              & (np.abs(upos[1:] - uc) <= g.width / 2)
                              & (np.abs(zpos[1:] - zc) <= g.height / 2))
        if len(hits):
            crossed += 1
            first_times.append(float(t[hits[0]]))
        else:
            first_times.append(math.inf)
    ordered = all(a < b for a, b in zip(first_times, first_times[1:]) if math.isfinite(b))
    return crossed, ordered


def summary_text(summary: dict) -> str:
    return "".join(f"{k} = {v}\n" for k, v in summary.items())


def write_outputs(result: RunResult, out_dir) -> tuple[str, str]:
    """Write <name>.csv and <name>.summary.txt into out_dir."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    base = os.path.join(out_dir, result.scenario.name)
    csv_path = base + ".csv"
    summary_path = base + ".summary.txt"
    if result.log is not None:
        result.log.to_csv(csv_path)
    with open(summary_path, "w") as f:
        f.write(summary_text(result.summary))
    return csv_path, summary_path


@dataclass
class BenchReport:
    single_ms_per_step: float
    single_sd: float
    swarm_ms_per_step: float
    swarm_sd: float
    repeats: int
    ratio: float
    rows: list[tuple[str, int, float, float]] = field(default_factory=list)

    def text(self) -> str:
        lines = [
            f"repeats = {self.repeats}",
            f"single.ms_per_step = {self.single_ms_per_step:.4f}",
            f"single.sd = {self.single_sd:.4f}",
            f"swarm.ms_per_step = {self.swarm_ms_per_step:.4f}",
            f"swarm.sd = {self.swarm_sd:.4f}",
            f"ratio = {self.ratio:.3f}",
        ]
        for name, agents, mean, sd in self.rows:
            lines.append(f"case.{name} = agents {agents}, {mean:.4f} ± {sd:.4f} ms/step")
        return "\n".join(lines) + "\n"


def bench(single: Scenario, swarm: Scenario, repeats: int = 20) -> BenchReport:
    """Time both scenarios single-threaded and report per-step wall clock.

    Logging is disabled so the measurement covers the planner cascade and
    the physics only, matching a controller-in-the-loop deployment.
    """
    if abs(single.dt - swarm.dt) > 1e-12 or abs(single.duration - swarm.duration) > 1e-9:
        raise ValueError("bench scenarios must share dt and duration")

    def time_one(sc: Scenario) -> list[float]:
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            run_scenario(sc, parallel=False, collect_log=False)
            elapsed = time.perf_counter() - t0
            times.append(1000.0 * elapsed / sc.n_steps)
        return times

    t_single = time_one(single)
    t_swarm = time_one(swarm)
    mean_s = statistics.fmean(t_single)
    mean_w = statistics.fmean(t_swarm)
    sd_s = statistics.stdev(t_single) if repeats > 1 else 0.0
    sd_w = statistics.stdev(t_swarm) if repeats > 1 else 0.0
    return BenchReport(
        mean_s, sd_s, mean_w, sd_w, repeats, mean_w / mean_s,
        rows=[
            (single.name, len(single.agents), mean_s, sd_s),
            (swarm.name, len(swarm.agents), mean_w, sd_w),
        ],
    )
