from xml.etree import ElementTree

from swarmpath.plotsvg import render_compare_svg, render_trace_svg
from swarmpath.simulator import CONVENTIONAL_APF, SWARMPATH, run
from conftest import one_pole_spec


def test_trace_svg_is_well_formed_xml():
    trace = run(one_pole_spec(), SWARMPATH)
    svg = render_trace_svg(trace, title="one pole")
    root = ElementTree.fromstring(svg)
    assert root.tag.endswith("svg")
    assert "one pole" in svg
    assert "polyline" in svg


def test_trace_svg_marks_linked_spans():
    trace = run(one_pole_spec(), SWARMPATH)
    svg = render_trace_svg(trace)
    # Obstacle-linked stretches are overdrawn in the link color.
    assert "#2ca02c" in svg


def test_trace_svg_deterministic():
    trace = run(one_pole_spec(), SWARMPATH)
    assert render_trace_svg(trace) == render_trace_svg(trace)


def test_compare_svg_stacks_two_panels():
    spec = one_pole_spec()
    sp = run(spec, SWARMPATH)
    base = run(spec, CONVENTIONAL_APF)
    svg = render_compare_svg(sp, base)
    ElementTree.fromstring(svg)
    assert svg.count("<g") >= 2
    assert "conventional" in svg.lower()
