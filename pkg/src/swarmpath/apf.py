"""Artificial potential field planner for the virtual leader.

Attraction pulls straight at the goal, repulsion pushes radially off every
obstacle whose surface is closer than its r_apf.  The leader descends the
combined field at constant speed, so the field only sets the direction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .world import Vec2, ZERO, Obstacle, ApfParams, ScenarioSpec, effective_obstacles

SURFACE_EPS = 1e-6   # clamp for the surface distance, m
STALL_EPS = 1e-9     # below this force norm the field has no direction, N


class SingularityError(ValueError):
    """A position coincides with an obstacle center, direction undefined."""


@dataclass(frozen=True)
class LeaderState:
    """Virtual leader pose; reached_goal latches once set."""

    position: Vec2
    reached_goal: bool = False


@dataclass(frozen=True)
class Path:
    """Planned leader trajectory sampled at dt."""

    points: tuple[Vec2, ...]
    dt: float
    outcome: str  # "completed" | "max_steps" | "stalled"

    def length(self) -> float:
        return sum(b.dist(a) for a, b in zip(self.points, self.points[1:]))


def attraction_force(p: Vec2, goal: Vec2, k_att: float) -> Vec2:
    """Linear pull toward the goal, k_att * (goal - p)."""
    return (goal - p) * k_att


def repulsion_force(p: Vec2, obs: Obstacle, k_rep: float) -> Vec2:
    """Radial push away from one obstacle, zero beyond its r_apf.

    Magnitude k_rep * (1/d_o - 1/d_safe) grows without bound toward the
    surface; d_o is the surface distance clamped at SURFACE_EPS so positions
    on or inside the body yield a huge finite push instead of dividing by
    zero.
    """
    offset = p - obs.center
    dist = offset.norm()
    if dist == 0.0:
        raise SingularityError(
            f"position coincides with obstacle center ({obs.center.x}, {obs.center.y})")
    d_o = max(dist - obs.radius, SURFACE_EPS)
    d_safe = obs.r_apf
    if d_o > d_safe:
        return ZERO
    magnitude = k_rep * (1.0 / d_o - 1.0 / d_safe)
    return offset * (magnitude / dist)


def total_force(p: Vec2, goal: Vec2, obstacles: tuple[Obstacle, ...],
                params: ApfParams) -> Vec2:
    """Attraction plus the sum of all repulsions at p."""
    force = attraction_force(p, goal, params.k_att)
    for obs in obstacles:
        force = force + repulsion_force(p, obs, params.k_rep)
    return force


def leader_step(state: LeaderState, spec: ScenarioSpec) -> tuple[LeaderState, bool]:
    """One constant-speed descent step; returns (new state, stalled flag).

    The goal check runs before moving, so a leader already within
    goal_threshold latches reached_goal and stays put.  A vanishing field
    (norm < STALL_EPS) is reported as a stall, also without moving.
    """
    if state.reached_goal:
        return state, False
    p = state.position
    if p.dist(spec.goal) <= spec.apf.goal_threshold:
        return LeaderState(p, reached_goal=True), False
    force = total_force(p, spec.goal, effective_obstacles(spec), spec.apf)
    norm = force.norm()
    if norm < STALL_EPS:
        return state, True
    new_p = p + force * (spec.dt * spec.apf.leader_speed / norm)
    reached = new_p.dist(spec.goal) <= spec.apf.goal_threshold
    return LeaderState(new_p, reached_goal=reached), False


STALL_PATIENCE = 100  # consecutive stalled steps before giving up


def plan_leader_path(spec: ScenarioSpec) -> Path:
    """Iterate leader_step from the scenario start until done.

    The point sequence contains the start and every position actually moved
    to; stalled steps add no points.  Outcome is "completed", "max_steps", or
    "stalled" after STALL_PATIENCE consecutive stalled steps (a local minimum
    of the field).
    """
    state = LeaderState(spec.start)
    points = [state.position]
    stall_run = 0
    outcome = "max_steps"
    for _ in range(spec.max_steps):
        state, stalled = leader_step(state, spec)
        if stalled:
            stall_run += 1
            if stall_run >= STALL_PATIENCE:
                outcome = "stalled"
                break
            continue
        stall_run = 0
        if points[-1] != state.position:
            points.append(state.position)
        if state.reached_goal:
            outcome = "completed"
            break
    return Path(points=tuple(points), dt=spec.dt, outcome=outcome)
