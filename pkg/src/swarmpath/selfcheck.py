"""Built-in numeric checks: integrator fidelity, force-law continuity, symmetry.

These run against closed forms and exact identities, independent of any
scenario, and back the `validate` CLI command.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .world import Vec2, ZERO, Obstacle, ApfParams, ImpedanceParams
from .apf import repulsion_force, total_force
from .impedance import LinkDynamicState, analytic_response, critical_damping, link_step

HORIZON_S = 5.0
INTEGRATOR_TOL = 1e-3
OVERSHOOT_TOL = 1e-6
CONTINUITY_TOL = 1e-6
SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_error < self.tolerance


def _release_trajectory(params: ImpedanceParams, x0: float, dt: float) -> list[float]:
    """x samples of a link released from rest at x0, one per step, t=0 first."""
    state = LinkDynamicState(delta_x=Vec2(x0, 0.0))
    xs = [x0]
    for _ in range(int(round(HORIZON_S / dt))):
        state = link_step(state, ZERO, params, dt)
        xs.append(state.delta_x.x)
    return xs


def check_integrator(dt: float = 0.01) -> CheckResult:
    """Max deviation of the stepped link from the critically damped closed form."""
    m, k = 1.9, 20.88
    params = ImpedanceParams(m=m, d=critical_damping(m, k), k=k)
    xs = _release_trajectory(params, 1.0, dt)
    worst = max(
        abs(x - analytic_response(params, 1.0, 0.0, n * dt))
        for n, x in enumerate(xs)
    )
    return CheckResult("integrator_vs_analytic", worst, INTEGRATOR_TOL)


def check_no_overshoot(dt: float = 0.01) -> CheckResult:
    """A critically damped release from x0 > 0 must never cross below zero."""
    m, k = 1.9, 20.88
    params = ImpedanceParams(m=m, d=critical_damping(m, k), k=k)
    xs = _release_trajectory(params, 1.0, dt)
    worst = max(0.0, -min(xs))
    return CheckResult("integrator_no_overshoot", worst, OVERSHOOT_TOL)


def check_repulsion_continuity() -> CheckResult:
    """Repulsion must vanish continuously at the onset distance.

    Probes just inside the boundary (d_o = d_safe - delta) and just outside;
    the inside magnitude must shrink toward zero with delta and the outside
    must be exactly zero.
    """
    k_rep = 0.3
    obs = Obstacle(center=ZERO, radius=0.2, r_apf=1.0, r_imp=0.5)
    d_safe = obs.r_apf
    worst = 0.0
    for delta in (1e-3, 1e-6):
        p = Vec2(obs.radius + d_safe - delta, 0.0)
        magnitude = repulsion_force(p, obs, k_rep).norm()
        # magnitude is k_rep * delta / (d_o * d_safe); hold it to the same scale
        worst = max(worst, magnitude * 1e-6 / delta)
    outside = repulsion_force(Vec2(obs.radius + d_safe + 1e-9, 0.0), obs, k_rep).norm()
    worst = max(worst, outside)
    return CheckResult("repulsion_boundary_continuity", worst, CONTINUITY_TOL)


def _rotated(v: Vec2, angle: float) -> Vec2:
    c, s = math.cos(angle), math.sin(angle)
    return Vec2(c * v.x - s * v.y, s * v.x + c * v.y)


def check_rotational_equivariance() -> CheckResult:
    """Rotating a whole configuration must rotate the total force with it."""
    params = ApfParams(k_att=1.0, k_rep=0.3, leader_speed=0.5, goal_threshold=0.1)
    p = Vec2(0.7, -0.2)
    goal = Vec2(4.0, 1.0)
    obstacles = (
        Obstacle(center=Vec2(1.4, 0.3), radius=0.2, r_apf=1.2, r_imp=0.6),
        Obstacle(center=Vec2(0.2, -1.0), radius=0.15, r_apf=1.0, r_imp=0.5),
    )
    base = total_force(p, goal, obstacles, params)
    worst = 0.0
    for angle in (0.3, 1.1, 2.5, 4.0):
        rotated_obstacles = tuple(
            Obstacle(center=_rotated(o.center, angle), radius=o.radius,
                     r_apf=o.r_apf, r_imp=o.r_imp)
            for o in obstacles
        )
        force = total_force(_rotated(p, angle), _rotated(goal, angle),
                            rotated_obstacles, params)
        worst = max(worst, (force - _rotated(base, angle)).norm())
    return CheckResult("rotational_equivariance", worst, SYMMETRY_TOL)


def run_selfcheck(dt: float = 0.01) -> list[CheckResult]:
    return [
        check_integrator(dt),
        check_no_overshoot(dt),
        check_repulsion_continuity(),
        check_rotational_equivariance(),
    ]
