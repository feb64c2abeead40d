#!/usr/bin/env python3
"""Sweep the binned correlation E(alpha, beta) over beta for several dark
widths r and both analyzer angles, writing one CSV curve per combination.

Usage:
    python3 scripts/sweep_correlations.py --out results/sweep
"""

import argparse
import csv
import math
import os

from prbox import (
    GaussianTwoModeState,
    correlation_E,
    postselected_probs,
    quantum_reference_curve,
)

PI = math.pi


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--delta", type=float, default=0.75)
    ap.add_argument("--gamma", type=float, default=1.25)
    ap.add_argument("--steps", type=int, default=97)
    ap.add_argument("--out", default="results/sweep")
    args = ap.parse_args()

    state = GaussianTwoModeState(args.delta, args.gamma)
    betas = [2 * PI * k / (args.steps - 1) for k in range(args.steps)]
    os.makedirs(args.out, exist_ok=True)

    for alpha in (PI, PI / 2):
        for r in (0.75, 1.0, 2.0):
            name = f"sweep_alpha{alpha:.4f}_r{r:.4f}.csv"
            with open(os.path.join(args.out, name), "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["beta_rad", "E", "alpha_rad", "r"])
                for beta in betas:
                    e = correlation_E(postselected_probs(state, alpha, beta, r))
                    w.writerow([f"{beta:.6g}", f"{e:.6g}",
                                f"{alpha:.6g}", f"{r:.6g}"])
            print("wrote", name)

    with open(os.path.join(args.out, "reference_curve.csv"), "w",
              newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["beta_rad", "E_reference"])
        for beta, e in quantum_reference_curve(betas):
            w.writerow([f"{beta:.6g}", f"{e:.6g}"])
    print("wrote reference_curve.csv")


if __name__ == "__main__":
    main()
