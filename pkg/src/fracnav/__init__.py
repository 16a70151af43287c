"""fracnav: passive navigation planning via fractal impedance control.

A cascade of two passive controllers replaces online trajectory
optimization: an elastic band streams a bounded-acceleration desired state
toward the current via point, and a region-of-attraction tracker pulls the
agent to that stream with a saturated force law.  The package also ships a
fixed-step multi-agent simulator (repulsive bubbles, viscous fields,
scripted obstacles, zero-order-hold feedback), a scenario file format, a
CLI, and a metrics suite (tracking RMSE, peak momentum/power versus
minimum jerk).
"""

from .band import Band, BandParams, SaturatedSpring, band_force, band_step
from .feedback import ZohChannel
from .fic import (
    ChannelState,
    ForceProfile,
    LinearProfile,
    Phase,
    fic_force,
    stored_energy,
    update_phase,
)
from .metrics import (
    TrajectoryLog,
    compare_with_min_jerk,
    min_jerk,
    peak_momentum,
    peak_power,
    rmse,
)
from .run import assemble, bench, run_scenario, write_outputs
from .scenario import (
    Scenario,
    ScenarioError,
    bundled_scenarios,
    load_bundled,
    load_scenario,
    load_scenario_file,
    serialize_scenario,
)
from .tracker import RoaProfile, Tracker, track_wrench, validate_profile
from .viaplan import ViaPlan, ViaSequencer, face_target_yaw
from .world import (
    AgentBody,
    BoxObstacle,
    Bubble,
    SimulationHalt,
    ViscousField,
    WallSegment,
    World,
    agent_accel,
    bubble_wrench,
    step_world,
)

__version__ = "0.1.0"
