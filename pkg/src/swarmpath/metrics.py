"""Trajectory metrics and the controller comparison report.

Everything here works on recorded SimulationTrace frames; nothing
re-integrates dynamics.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .world import Gate, effective_obstacles
from .simulator import COMPLETED, CONVENTIONAL_APF, SWARMPATH, SimulationTrace, swarm_complete


def path_length(points: np.ndarray) -> float:
    """Sum of segment lengths of an (N, 2) polyline."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected (N, 2) points, got shape {pts.shape}")
    if len(pts) < 2:
        return 0.0
    return float(np.sum(np.linalg.norm(np.diff(pts, axis=0), axis=1)))


def drone_path_length(trace: SimulationTrace, drone: int) -> float:
    return path_length(trace.drone_positions(drone))


def leader_path_length(trace: SimulationTrace) -> float | None:
    track = trace.leader_positions()
    return None if track is None else path_length(track)


def _stacked_positions(trace: SimulationTrace) -> np.ndarray:
    """(n_drones, n_frames, 2) array of all drone tracks."""
    return np.stack([trace.drone_positions(i) for i in range(trace.n_drones)])


def pair_max_distance(trace: SimulationTrace, drone_a: int, drone_b: int) -> float:
    """Largest separation between two drones over the whole run."""
    pa = trace.drone_positions(drone_a)
    pb = trace.drone_positions(drone_b)
    return float(np.max(np.linalg.norm(pa - pb, axis=1)))


def max_pairwise_distance(trace: SimulationTrace) -> float:
    """Largest separation between any two drones over the whole run.

    Zero for a single-drone swarm.
    """
    if trace.n_drones < 2:
        return 0.0
    tracks = _stacked_positions(trace)
    best = 0.0
    for a, b in itertools.combinations(range(trace.n_drones), 2):
        best = max(best, float(np.max(np.linalg.norm(tracks[a] - tracks[b], axis=1))))
    return best


def completion_time(trace: SimulationTrace) -> float | None:
    """t of the first frame where the swarm satisfies the completion predicate.

    None unless the run's outcome is completed.
    """
    if trace.outcome != COMPLETED:
        return None
    for frame in trace.frames:
        if swarm_complete(frame, trace.spec):
            return frame.t
    return None


def _aligned(pa: np.ndarray, pb: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Extend the shorter track by holding its final position."""
    if len(pa) == len(pb):
        return pa, pb
    if len(pa) < len(pb):
        pad = np.repeat(pa[-1:], len(pb) - len(pa), axis=0)
        return np.concatenate([pa, pad]), pb
    pad = np.repeat(pb[-1:], len(pa) - len(pb), axis=0)
    return pa, np.concatenate([pb, pad])


def ape(trace_a: SimulationTrace, trace_b: SimulationTrace, drone: int) -> float:
    """Average position error of a drone between two runs, percent.

    100 * mean frame-wise separation / reference path length, where trace_b
    is the reference.  Tracks of different duration are compared by holding
    the final position of the shorter one.
    """
    if trace_a.spec.dt != trace_b.spec.dt:
        raise ValueError(
            f"mismatched dt: {trace_a.spec.dt} vs {trace_b.spec.dt}")
    pa, pb = _aligned(trace_a.drone_positions(drone), trace_b.drone_positions(drone))
    ref_length = path_length(pb)
    if ref_length == 0.0:
        raise ValueError(f"drone {drone}: reference path has zero length")
    mean_err = float(np.mean(np.linalg.norm(pa - pb, axis=1)))
    return 100.0 * mean_err / ref_length


@dataclass(frozen=True)
class DroneComparison:
    """Per-drone numbers; ape_percent uses the baseline as reference."""

    drone: int
    sp_path_length: float
    base_path_length: float
    ape_percent: float | None


@dataclass(frozen=True)
class PairComparison:
    """Largest separation of one drone pair under each controller."""

    drone_a: int
    drone_b: int
    sp_max_distance: float
    base_max_distance: float
    ratio: float | None  # sp / base, None when the baseline distance is zero


@dataclass(frozen=True)
class ComparisonReport:
    """Adaptive-link swarm vs conventional potential-field swarm."""

    sp_outcome: str
    base_outcome: str
    sp_completion_time: float | None
    base_completion_time: float | None
    time_ratio: float | None  # sp / base, None unless both completed
    sp_max_pairwise: float
    base_max_pairwise: float
    pairwise_ratio: float | None
    drones: tuple[DroneComparison, ...]
    pairs: tuple[PairComparison, ...]


def compare(sp: SimulationTrace, base: SimulationTrace) -> ComparisonReport:
    """Build the comparison report for two runs of the same scenario.

    A run that did not complete keeps its outcome in the report and drops the
    ratios that need it, rather than failing the whole comparison.
    """
    if sp.controller != SWARMPATH:
        raise ValueError(f"first trace must be {SWARMPATH}, got {sp.controller}")
    if base.controller != CONVENTIONAL_APF:
        raise ValueError(f"second trace must be {CONVENTIONAL_APF}, got {base.controller}")
    if sp.spec != base.spec:
        raise ValueError("traces come from different scenarios")

    t_sp = completion_time(sp)
    t_base = completion_time(base)
    time_ratio = None
    if t_sp is not None and t_base is not None and t_base > 0:
        time_ratio = t_sp / t_base

    sp_pairwise = max_pairwise_distance(sp)
    base_pairwise = max_pairwise_distance(base)
    pairwise_ratio = sp_pairwise / base_pairwise if base_pairwise > 0 else None

    drones = []
    for i in range(sp.n_drones):
        try:
            err = ape(sp, base, i)
        except ValueError:
            err = None
        drones.append(DroneComparison(
            drone=i,
            sp_path_length=drone_path_length(sp, i),
            base_path_length=drone_path_length(base, i),
            ape_percent=err,
        ))

    pairs = []
    for a, b in itertools.combinations(range(sp.n_drones), 2):
        d_sp = pair_max_distance(sp, a, b)
        d_base = pair_max_distance(base, a, b)
        pairs.append(PairComparison(
            drone_a=a, drone_b=b,
            sp_max_distance=d_sp,
            base_max_distance=d_base,
            ratio=d_sp / d_base if d_base > 0 else None,
        ))

    return ComparisonReport(
        sp_outcome=sp.outcome,
        base_outcome=base.outcome,
        sp_completion_time=t_sp,
        base_completion_time=t_base,
        time_ratio=time_ratio,
        sp_max_pairwise=sp_pairwise,
        base_max_pairwise=base_pairwise,
        pairwise_ratio=pairwise_ratio,
        drones=tuple(drones),
        pairs=tuple(pairs),
    )


def min_obstacle_clearance(trace: SimulationTrace) -> float:
    """Smallest surface distance any drone ever has to any obstacle body.

    Positive means the run was collision free.  Infinity when the scenario
    has no obstacles.
    """
    obstacles = effective_obstacles(trace.spec)
    if not obstacles:
        return math.inf
    tracks = _stacked_positions(trace)  # (D, F, 2)
    best = math.inf
    for obs in obstacles:
        center = np.array(obs.center.as_tuple())
        dist = np.linalg.norm(tracks - center, axis=2) - obs.radius
        best = min(best, float(np.min(dist)))
    return best


def gate_crossings(trace: SimulationTrace, drone: int, gate: Gate) -> tuple[float, ...]:
    """Axial fractions at which a drone's path crosses the gate line.

    The gate line runs from pole_a's center (fraction 0) to pole_b's center
    (fraction 1); each crossing of that infinite line contributes the
    interpolated fraction of the crossing point.  A crossing strictly inside
    the open gap avoids both pole bodies: radius_a / L < f < 1 - radius_b / L
    with L the center distance.
    """
    ca = np.array(gate.pole_a.center.as_tuple())
    cb = np.array(gate.pole_b.center.as_tuple())
    axis = cb - ca
    length2 = float(axis @ axis)
    if length2 == 0.0:
        raise ValueError("gate poles share a center")
    normal = np.array([-axis[1], axis[0]])
    pts = trace.drone_positions(drone)
    side = (pts - ca) @ normal
    fractions = []
    for n in range(len(pts) - 1):
        s0, s1 = side[n], side[n + 1]
        if s0 == s1 or (s0 > 0) == (s1 > 0):
            continue
        tau = s0 / (s0 - s1)
        crossing = pts[n] + tau * (pts[n + 1] - pts[n])
        fractions.append(float((crossing - ca) @ axis / length2))
    return tuple(fractions)
