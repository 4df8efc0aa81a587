"""Deterministic 2D swarm path planning.

A virtual leader descends an artificial potential field at constant speed;
follower drones hold formation through per-drone impedance links that
re-anchor onto nearby obstacles and push the drone around them.  A
conventional potential-field swarm (every drone independent) is included as
the comparison baseline.
"""

from .world import (
    ApfParams,
    Gate,
    ImpedanceParams,
    Obstacle,
    ScenarioError,
    ScenarioParseError,
    ScenarioSpec,
    ScenarioValidationError,
    TopologyParams,
    Vec2,
    effective_obstacles,
    load_scenario,
    read_scenario,
    serialize_scenario,
    validate_spec,
)
from .apf import (
    LeaderState,
    Path,
    SingularityError,
    attraction_force,
    leader_step,
    plan_leader_path,
    repulsion_force,
    total_force,
)
from .impedance import (
    LinkDynamicState,
    analytic_response,
    critical_damping,
    link_energy,
    link_step,
)
from .topology import (
    DroneState,
    LinkMode,
    SwarmState,
    deflection_offset,
    desired_position,
    nearest_obstacle,
    swarm_step,
    update_link_mode,
)
from .baseline import BaselineDroneState, BaselineState, baseline_step
from .simulator import (
    COMPLETED,
    CONVENTIONAL_APF,
    MAX_STEPS,
    STALLED,
    SWARMPATH,
    SimulationTrace,
    run,
)
from .metrics import (
    ComparisonReport,
    ape,
    compare,
    completion_time,
    drone_path_length,
    gate_crossings,
    max_pairwise_distance,
    min_obstacle_clearance,
    pair_max_distance,
    path_length,
)

__version__ = "0.1.0"

__all__ = [
    "ApfParams", "Gate", "ImpedanceParams", "Obstacle", "ScenarioError",
    "ScenarioParseError", "ScenarioSpec", "ScenarioValidationError",
    "TopologyParams", "Vec2", "effective_obstacles", "load_scenario",
    "read_scenario", "serialize_scenario", "validate_spec",
    "LeaderState", "Path", "SingularityError", "attraction_force",
    "leader_step", "plan_leader_path", "repulsion_force", "total_force",
    "LinkDynamicState", "analytic_response", "critical_damping",
    "link_energy", "link_step",
    "DroneState", "LinkMode", "SwarmState", "deflection_offset",
    "desired_position", "nearest_obstacle", "swarm_step", "update_link_mode",
    "BaselineDroneState", "BaselineState", "baseline_step",
    "COMPLETED", "CONVENTIONAL_APF", "MAX_STEPS", "STALLED", "SWARMPATH",
    "SimulationTrace", "run",
    "ComparisonReport", "ape", "compare", "completion_time",
    "drone_path_length", "gate_crossings", "max_pairwise_distance",
    "min_obstacle_clearance", "pair_max_distance", "path_length",
    "__version__",
]
