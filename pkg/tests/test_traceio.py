import json

import pytest
from hypothesis import given, strategies as st

from swarmpath.metrics import compare
from swarmpath.simulator import CONVENTIONAL_APF, SWARMPATH, run
from swarmpath.traceio import (
    ParsedTrace,
    parse_trace_csv,
    render_comparison_json,
    render_metrics_json,
    render_parsed_csv,
    render_trace_csv,
    sig6,
    write_trace_csv,
)
from swarmpath.world import Vec2
from conftest import one_pole_spec, straight_spec


def test_csv_header_and_shape():
    trace = run(straight_spec(goal=Vec2(1.0, 0.0)), SWARMPATH)
    text = render_trace_csv(trace)
    lines = text.strip().split("\n")
    header = lines[0].split(",")
    assert header[:3] == ["t", "leader_x", "leader_y"]
    assert "drone1_x" in header and "drone4_mode" in header
    assert len(lines) == trace.n_frames + 1


def test_csv_round_trip_swarmpath():
    trace = run(one_pole_spec(), SWARMPATH)
    text = render_trace_csv(trace)
    parsed = parse_trace_csv(text)
    assert render_parsed_csv(parsed) == text
    assert parsed.n_drones == trace.n_drones
    assert parsed.times[0] == 0.0
    assert all(v is not None for v in parsed.leader)
    assert all(m is not None for row in parsed.modes for m in row)


def test_csv_round_trip_baseline_leaves_leader_empty():
    trace = run(straight_spec(goal=Vec2(1.0, 0.0)), CONVENTIONAL_APF)
    text = render_trace_csv(trace)
    assert ",,," in text.split("\n")[1]  # empty leader cells in data rows
    parsed = parse_trace_csv(text)
    assert all(v is None for v in parsed.leader)
    assert all(m is None for row in parsed.modes for m in row)
    assert render_parsed_csv(parsed) == text


def test_csv_floats_survive_exactly():
    trace = run(one_pole_spec(), SWARMPATH)
    parsed = parse_trace_csv(render_trace_csv(trace))
    final = trace.final_frame()
    assert parsed.positions[0][-1] == final.drones[0].position


def test_write_trace_csv_uses_unix_newlines(tmp_path):
    trace = run(straight_spec(goal=Vec2(0.5, 0.0)), SWARMPATH)
    out = tmp_path / "trace.csv"
    write_trace_csv(trace, out)
    data = out.read_bytes()
    assert b"\r" not in data
    assert data.decode("utf-8") == render_trace_csv(trace)


@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_repr_floats_round_trip(value):
    from swarmpath.topology import LinkMode

    parsed = ParsedTrace(
        times=(0.0,),
        leader=(Vec2(value, -value),),
        positions=((Vec2(value, 0.0),),),
        modes=((LinkMode.leader(),),),
    )
    again = parse_trace_csv(render_parsed_csv(parsed))
    assert again.leader[0] == Vec2(value, -value)
    assert again.positions[0][0].x == value


def test_sig6():
    assert sig6(None) is None
    assert sig6(1.23456789) == 1.23457
    assert sig6(0.0001234567) == 0.000123457
    assert sig6(25.0) == 25.0


def test_metrics_json_fields_and_rounding():
    trace = run(one_pole_spec(), SWARMPATH)
    doc = json.loads(render_metrics_json(trace))
    assert doc["controller"] == SWARMPATH
    assert doc["outcome"] == "completed"
    assert doc["frames"] == trace.n_frames
    assert set(doc["drone_path_lengths_m"]) == {"drone1", "drone2", "drone3", "drone4"}
    for v in doc["drone_path_lengths_m"].values():
        assert v == sig6(v)
    assert doc["min_obstacle_clearance_m"] > 0.0


def test_metrics_json_key_order_is_stable():
    trace = run(straight_spec(goal=Vec2(0.5, 0.0)), SWARMPATH)
    keys = list(json.loads(render_metrics_json(trace)).keys())
    assert keys == [
        "controller",
        "outcome",
        "frames",
        "duration_s",
        "completion_time_s",
        "leader_path_length_m",
        "drone_path_lengths_m",
        "max_pairwise_distance_m",
        "min_obstacle_clearance_m",
    ]


def test_comparison_json_structure():
    spec = one_pole_spec()
    report = compare(run(spec, SWARMPATH), run(spec, CONVENTIONAL_APF))
    doc = json.loads(render_comparison_json(report))
    assert doc["swarmpath"]["outcome"] == "completed"
    assert doc["conventional_apf"]["outcome"] == "completed"
    assert doc["time_ratio"] == sig6(
        report.sp_completion_time / report.base_completion_time
    )
    assert len(doc["pairs"]) == 6
    assert doc["pairs"][0]["drones"] == [1, 2]
    assert len(doc["drones"]) == 4
    assert doc["drones"][0]["drone"] == 1
    assert "ape_definition" in doc
