"""Conventional potential-field swarm: every drone descends the field on its own.

Each drone runs the same constant-speed descent as the virtual leader, toward
its own goal slot goal + formation_offset, with no links and no coordination.
This is the comparison controller for the adaptive-link swarm.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .world import ScenarioSpec, Vec2, effective_obstacles
from .apf import STALL_EPS, total_force


@dataclass(frozen=True)
class BaselineDroneState:
    """Independent drone: id indexes formation_offsets, reached_goal latches."""

    id: int
    position: Vec2
    reached_goal: bool = False


@dataclass(frozen=True)
class BaselineState:
    """All independent drones at one instant; t == step * dt."""

    drones: tuple[BaselineDroneState, ...]
    t: float
    step: int


def baseline_drone_step(drone: BaselineDroneState,
                        spec: ScenarioSpec) -> tuple[BaselineDroneState, bool]:
    """One descent step for one drone; returns (new state, stalled flag).

    Same rules as the leader: goal check before moving, constant speed along
    the normalized field, stall when the field vanishes.
    """
    if drone.reached_goal:
        return drone, False
    goal = spec.goal + spec.formation_offsets[drone.id]
    p = drone.position
    if p.dist(goal) <= spec.apf.goal_threshold:
        return replace(drone, reached_goal=True), False
    force = total_force(p, goal, effective_obstacles(spec), spec.apf)
    norm = force.norm()
    if norm < STALL_EPS:
        return drone, True
    new_p = p + force * (spec.dt * spec.apf.leader_speed / norm)
    reached = new_p.dist(goal) <= spec.apf.goal_threshold
    return BaselineDroneState(drone.id, new_p, reached_goal=reached), False


def baseline_step(state: BaselineState, spec: ScenarioSpec) -> tuple[BaselineState, bool]:
    """Advance every drone; stalled means no unfinished drone could move."""
    drones = []
    moved = False
    unfinished = False
    for drone in state.drones:
        new_drone, stalled = baseline_drone_step(drone, spec)
        drones.append(new_drone)
        if not new_drone.reached_goal:
            unfinished = True
        if not stalled and new_drone.position != drone.position:
            moved = True
    step = state.step + 1
    new_state = BaselineState(drones=tuple(drones), t=step * spec.dt, step=step)
    return new_state, (unfinished and not moved)
