"""Staircase forest: where the link topology pays off.

Rows of thin posts form walls of increasing height.  Conventional per-drone
planning respects every post's full standoff field, so the outer drones climb
over each wall and the formation balloons.  The linked swarm keeps its shape:
the leader rides the symmetric corridor straight through while followers
slip past the posts at the much smaller link radius.
"""

import argparse
import pathlib

from swarmpath import (
    CONVENTIONAL_APF,
    SWARMPATH,
    compare,
    min_obstacle_clearance,
    read_scenario,
    run,
)
from swarmpath.plotsvg import render_compare_svg

SCENARIOS = pathlib.Path(__file__).resolve().parent.parent / "scenarios"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("out"))
    args = parser.parse_args()

    spec = read_scenario(SCENARIOS / "case2_forest.json")
    sp = run(spec, SWARMPATH)
    base = run(spec, CONVENTIONAL_APF)
    report = compare(sp, base)

    print(f"completion: swarm {report.sp_completion_time:.2f} s, "
          f"conventional {report.base_completion_time:.2f} s "
          f"(ratio {report.time_ratio:.3f})")
    print(f"min clearance (swarm): {min_obstacle_clearance(sp):.3f} m")
    print("max pairwise spread: "
          f"swarm {report.sp_max_pairwise:.2f} m, "
          f"conventional {report.base_max_pairwise:.2f} m")
    print("per-pair spread ratio (swarm / conventional):")
    for pair in report.pairs:
        print(f"  drones ({pair.drone_a + 1},{pair.drone_b + 1}): "
              f"{pair.sp_max_distance:.2f} / {pair.base_max_distance:.2f} "
              f"= {pair.ratio:.3f}")
    print("per-drone path length and cross-track error vs conventional:")
    for row in report.drones:
        print(f"  drone {row.drone + 1}: {row.sp_path_length:.2f} m vs "
              f"{row.base_path_length:.2f} m (ape {row.ape_percent:.1f}%)")

    args.out.mkdir(parents=True, exist_ok=True)
    svg = args.out / "forest_run.svg"
    svg.write_text(render_compare_svg(sp, base))
    print(f"wrote {svg}")


if __name__ == "__main__":
    main()
