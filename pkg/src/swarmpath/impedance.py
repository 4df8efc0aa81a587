"""Follower link dynamics: a per-axis mass-spring-damper on the formation error.

The link state is the deviation (delta_x, delta_v) of a drone from its desired
formation slot.  m * a + d * v + k * x = f is integrated with semi-implicit
Euler (velocity first, then position with the new velocity), which keeps the
discrete system dissipative at the step sizes used here.  The two axes are
fully independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .world import Vec2, ZERO, ImpedanceParams


@dataclass(frozen=True)
class LinkDynamicState:
    """Deviation from the desired formation slot and its rate."""

    delta_x: Vec2 = ZERO  # m
    delta_v: Vec2 = ZERO  # m/s


def critical_damping(m: float, k: float) -> float:
    """Damping coefficient 2*sqrt(m*k) that separates the oscillatory regime."""
    if not (m > 0 and k > 0):
        raise ValueError(f"m and k must be positive, got m={m} k={k}")
    return 2.0 * math.sqrt(m * k)


def link_step(state: LinkDynamicState, f_ext: Vec2,
              params: ImpedanceParams, dt: float) -> LinkDynamicState:
    """Advance the link one step of dt under external force f_ext.

    Acceleration uses the current state, the velocity update is applied
    before the position update.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    m, d, k = params.m, params.d, params.k
    if not (m > 0 and d > 0 and k > 0):
        raise ValueError(f"m, d, k must be positive, got m={m} d={d} k={k}")
    x, v = state.delta_x, state.delta_v
    ax = (f_ext.x - d * v.x - k * x.x) / m
    ay = (f_ext.y - d * v.y - k * x.y) / m
    vx = v.x + ax * dt
    vy = v.y + ay * dt
    return LinkDynamicState(
        delta_x=Vec2(x.x + vx * dt, x.y + vy * dt),
        delta_v=Vec2(vx, vy),
    )


def link_energy(state: LinkDynamicState, params: ImpedanceParams) -> float:
    """Stored energy 0.5*m*|v|^2 + 0.5*k*|x|^2 of the link, J."""
    v2 = state.delta_v.dot(state.delta_v)
    x2 = state.delta_x.dot(state.delta_x)
    return 0.5 * params.m * v2 + 0.5 * params.k * x2


def analytic_response(params: ImpedanceParams, x0: float, v0: float, t: float) -> float:
    """Closed-form unforced response of one axis, critically damped case only.

    x(t) = (x0 + (v0 + wn*x0) * t) * exp(-wn * t) with wn = sqrt(k/m).
    Raises ValueError unless d matches 2*sqrt(m*k) to 1e-9 relative, since the
    closed form does not hold away from critical damping.
    """
    crit = critical_damping(params.m, params.k)
    if abs(params.d - crit) > 1e-9 * crit:
        raise ValueError(
            f"closed form needs critical damping d={crit!r}, got d={params.d!r}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    wn = math.sqrt(params.k / params.m)
    return (x0 + (v0 + wn * x0) * t) * math.exp(-wn * t)
