import math

import pytest
from hypothesis import given, strategies as st

from swarmpath.impedance import (
    LinkDynamicState,
    analytic_response,
    critical_damping,
    link_energy,
    link_step,
)
from swarmpath.world import ImpedanceParams, Vec2

PARAMS = ImpedanceParams(m=1.9, d=12.6, k=20.88)

# Hand-evaluated lattice for the default link released from x = (1, 0):
#   a  = (0 - d*0 - k*1) / m = -10.989473684210527
#   v1 = a * dt             = -0.10989473684210527
#   x1 = 1 + v1 * dt        = 0.9989010526315789
HAND_V1 = -0.10989473684210527
HAND_X1 = 0.9989010526315789
HAND_V2 = -0.21238094891966758
HAND_X2 = 0.9967772431423823


def test_critical_damping_value():
    assert critical_damping(1.9, 20.88) == pytest.approx(12.597142533130281, abs=1e-12)


def test_critical_damping_requires_positive_args():
    with pytest.raises(ValueError):
        critical_damping(0.0, 1.0)
    with pytest.raises(ValueError):
        critical_damping(1.0, -2.0)


def test_single_step_matches_hand_lattice():
    state = LinkDynamicState(delta_x=Vec2(1.0, 0.0))
    out = link_step(state, Vec2(0.0, 0.0), PARAMS, 0.01)
    assert out.delta_v.x == HAND_V1
    assert out.delta_x.x == HAND_X1
    assert out.delta_v.y == 0.0
    assert out.delta_x.y == 0.0


def test_two_steps_match_hand_lattice():
    state = LinkDynamicState(delta_x=Vec2(1.0, 0.0))
    out = link_step(link_step(state, Vec2(0.0, 0.0), PARAMS, 0.01), Vec2(0.0, 0.0), PARAMS, 0.01)
    assert out.delta_x.x == HAND_X2
    assert out.delta_v.x == HAND_V2


def test_axes_do_not_couple():
    state = LinkDynamicState(delta_x=Vec2(0.3, -0.8), delta_v=Vec2(0.0, 0.2))
    out = link_step(state, Vec2(1.0, 0.0), PARAMS, 0.01)
    only_x = link_step(LinkDynamicState(Vec2(0.3, 0.0)), Vec2(1.0, 0.0), PARAMS, 0.01)
    assert out.delta_x.x == only_x.delta_x.x
    assert out.delta_v.x == only_x.delta_v.x


def test_analytic_response_value():
    # x(t) = (x0 + (v0 + wn x0) t) exp(-wn t) with wn = sqrt(k/m)
    crit = ImpedanceParams(m=1.9, d=critical_damping(1.9, 20.88), k=20.88)
    assert analytic_response(crit, 1.0, 0.0, 1.0) == pytest.approx(0.15677690184385776, rel=1e-12)
    assert analytic_response(crit, 1.0, 0.0, 0.0) == 1.0


def test_analytic_response_rejects_non_critical_damping():
    underdamped = ImpedanceParams(m=1.9, d=5.0, k=20.88)
    with pytest.raises(ValueError):
        analytic_response(underdamped, 1.0, 0.0, 1.0)


def test_integrator_converges_first_order():
    # Halving dt should roughly halve the error at a fixed horizon.
    crit = ImpedanceParams(m=1.9, d=critical_damping(1.9, 20.88), k=20.88)

    def error_at(dt):
        steps = round(2.0 / dt)
        state = LinkDynamicState(delta_x=Vec2(1.0, 0.0))
        worst = 0.0
        for n in range(1, steps + 1):
            state = link_step(state, Vec2(0.0, 0.0), crit, dt)
            worst = max(worst, abs(state.delta_x.x - analytic_response(crit, 1.0, 0.0, n * dt)))
        return worst

    e1 = error_at(0.01)
    e2 = error_at(0.005)
    e4 = error_at(0.0025)
    assert 1.7 < e1 / e2 < 2.3
    assert 1.7 < e2 / e4 < 2.3


def test_critically_damped_release_never_overshoots():
    crit = ImpedanceParams(m=1.9, d=critical_damping(1.9, 20.88), k=20.88)
    state = LinkDynamicState(delta_x=Vec2(1.0, 0.0))
    for _ in range(2000):
        state = link_step(state, Vec2(0.0, 0.0), crit, 0.01)
        assert state.delta_x.x > -1e-6


def test_constant_force_settles_at_static_deflection():
    state = LinkDynamicState()
    f = Vec2(2.0, -1.0)
    for _ in range(5000):
        state = link_step(state, f, PARAMS, 0.01)
    assert state.delta_x.x == pytest.approx(2.0 / PARAMS.k, abs=1e-9)
    assert state.delta_x.y == pytest.approx(-1.0 / PARAMS.k, abs=1e-9)
    assert state.delta_v.norm() < 1e-9


def test_link_step_validates_arguments():
    state = LinkDynamicState()
    with pytest.raises(ValueError):
        link_step(state, Vec2(0, 0), PARAMS, 0.0)
    with pytest.raises(ValueError):
        link_step(state, Vec2(0, 0), ImpedanceParams(m=-1.0), 0.01)


def test_link_energy():
    state = LinkDynamicState(delta_x=Vec2(3.0, 4.0), delta_v=Vec2(1.0, 0.0))
    expected = 0.5 * PARAMS.m * 1.0 + 0.5 * PARAMS.k * 25.0
    assert link_energy(state, PARAMS) == pytest.approx(expected)


@given(
    x0=st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
    y0=st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
    m=st.floats(min_value=0.5, max_value=5.0),
    k=st.floats(min_value=1.0, max_value=50.0),
)
def test_unforced_link_dissipates(x0, y0, m, k):
    # With no external force the link can only lose energy (dt well under
    # the stability limit for these parameter ranges).
    params = ImpedanceParams(m=m, d=critical_damping(m, k), k=k)
    state = LinkDynamicState(delta_x=Vec2(x0, y0))
    energy = link_energy(state, params)
    for _ in range(200):
        state = link_step(state, Vec2(0.0, 0.0), params, 0.01)
        new_energy = link_energy(state, params)
        assert new_energy <= energy + 1e-12
        energy = new_energy


@given(scale=st.floats(min_value=-3.0, max_value=3.0, allow_nan=False))
def test_step_is_linear_in_state_and_force(scale):
    base = LinkDynamicState(delta_x=Vec2(0.4, -0.2), delta_v=Vec2(0.1, 0.3))
    scaled = LinkDynamicState(delta_x=base.delta_x * scale, delta_v=base.delta_v * scale)
    out = link_step(base, Vec2(1.0, -2.0), PARAMS, 0.01)
    out_scaled = link_step(scaled, Vec2(scale * 1.0, scale * -2.0), PARAMS, 0.01)
    assert out_scaled.delta_x.x == pytest.approx(scale * out.delta_x.x, abs=1e-12)
    assert out_scaled.delta_v.y == pytest.approx(scale * out.delta_v.y, abs=1e-12)
