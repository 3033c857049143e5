#!/usr/bin/env python3
"""Fitness heat maps: rho as a function of one roaming observation.

Three observations are pinned; a fourth sweeps a grid. Writes one CSV per
variant (gamma1,gamma2,rho triples) and, with --plot, a PNG heat map.
"""

import argparse

import numpy as np

from invlp.gof import GridSpec, rho_sweep, sweep_to_csv
from invlp.model import ForwardProblem, NormSpec

REGION = ForwardProblem(
    A=np.array([
        [0.71, 0.71],
        [0.71, -0.71],
        [-1.0, 0.0],
        [0.0, -1.0],
        [0.0, 1.0],
    ]),
    b=np.array([4.24, -2.83, -7.0, -7.0, 1.0]),
)
FIXED = np.array([[2.0, 5.0], [3.0, 6.0], [5.0, 4.0]])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cells", type=int, default=61, help="grid nodes per axis")
    parser.add_argument("--plot", action="store_true", help="also write PNG heat maps")
    parser.add_argument("--prefix", default="heatmap", help="output file prefix")
    args = parser.parse_args()

    grid = GridSpec(-2.0, 10.0, args.cells, -2.0, 10.0, args.cells)
    for variant, spec in [
        ("adg", NormSpec(variant="adg")),
        ("dsp2", NormSpec(variant="dsp", ds_p=2.0)),
    ]:
        sweep = rho_sweep(REGION, FIXED, grid, spec)
        path = f"{args.prefix}_{variant}.csv"
        with open(path, "w", encoding="utf-8") as fh:
            sweep_to_csv(sweep, fh)
        best = np.unravel_index(np.nanargmax(sweep.rho), sweep.rho.shape)
        print(f"{variant}: wrote {path}; max rho {np.nanmax(sweep.rho):.4f} at "
              f"({sweep.gamma1[best[0]]:.2f}, {sweep.gamma2[best[1]]:.2f})")
        if args.plot:
            import matplotlib

            matplotlib.use("Agg")
            import matplotlib.pyplot as plt

            fig, ax = plt.subplots(figsize=(5, 4.2))
            im = ax.imshow(
                sweep.rho.T, origin="lower", aspect="auto",
                extent=(grid.lo1, grid.hi1, grid.lo2, grid.hi2),
                vmin=0.0, vmax=1.0, cmap="viridis",
            )
            ax.scatter(FIXED[:, 0], FIXED[:, 1], c="white", edgecolors="black", s=40)
            ax.set_xlabel("gamma1")
            ax.set_ylabel("gamma2")
            ax.set_title(f"rho, {variant}")
            fig.colorbar(im, ax=ax, label="rho")
            fig.tight_layout()
            png = f"{args.prefix}_{variant}.png"
            fig.savefig(png, dpi=150)
            print(f"{variant}: wrote {png}")


if __name__ == "__main__":
    main()
