#!/usr/bin/env python3
"""Plan lens systems that realize fractional Fourier transforms of several
target orders from a fixed focal-length inventory, printing the stages and
their free-space distances.

Usage:
    python3 scripts/plan_lenses.py --inventory 25 15 20 50 30
"""

import argparse
import math

from prbox import PlanNotFoundError, plan_lens_system

PI = math.pi

TARGETS = [
    ("pi/2", PI / 2),
    ("29pi/50", 29 * PI / 50),
    ("5pi/4", 5 * PI / 4),
    ("62pi/50", 62 * PI / 50),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--inventory", type=float, nargs="+",
                    default=[25.0, 15.0, 20.0, 50.0, 30.0])
    ap.add_argument("--max-stages", type=int, default=3)
    args = ap.parse_args()

    for label, theta in TARGETS:
        print(f"target order {label} ({theta:.4f} rad):")
        try:
            plan = plan_lens_system(theta, args.inventory, args.max_stages)
        except PlanNotFoundError as exc:
            print(f"  no plan: {exc}")
            continue
        for stage in plan.stages:
            print(
                f"  theta = {stage.order:.4f} rad, f = {stage.focal_cm:g} cm, "
                f"z = {stage.z_cm:.2f} cm"
            )
        print(f"  total propagation {plan.total_z_cm:.2f} cm")


if __name__ == "__main__":
    main()
