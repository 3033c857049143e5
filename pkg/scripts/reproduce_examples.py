#!/usr/bin/env python3
"""Worked examples: imputed costs and fit scores on three small regions.

Prints, for each fixture, the imputed cost under all three loss variants and
the coefficient of complementarity, next to the brute-force oracle value.
"""

import numpy as np

from invlp.adg import solve_adg
from invlp.dspace import solve_dsp
from invlp.gof import rho
from invlp.model import EnsembleData, ForwardProblem, NormSpec
from invlp.oracle import oracle_adg, oracle_dsp, oracle_rdg
from invlp.rdg import solve_rdg

SQUARE = ForwardProblem(
    A=np.array([[-1.0, 0.0], [0.0, -1.0], [1.0, 0.0], [0.0, 1.0]]),
    b=np.array([-7.0, -7.0, 1.0, 1.0]),
)
TIGHT = EnsembleData(np.array([[3.75, 2.0], [4.0, 2.25], [4.25, 2.0]]))
SPREAD = EnsembleData(np.array([[1.5, 2.0], [4.0, 6.25], [6.5, 2.0]]))


def pentagon(u, v):
    return ForwardProblem(
        A=np.array([[-0.71, 0.71], [-1.0, 0.0], [0.0, -1.0], [1.0, 0.0], [0.0, 1.0]]),
        b=np.array([-2.83, -7.0, -v, u, 1.0]),
    )


PENTAGON_POINTS = EnsembleData(np.array([[5.0, 2.5], [4.75, 3.75], [5.5, 3.0]]))


def describe(name, fp, data):
    print(f"\n=== {name} ===")
    fit_a = solve_adg(fp, data)
    oa, _ = oracle_adg(fp, data)
    rep_a = rho(fp, data, NormSpec(variant="adg"), fit=fit_a)
    print(f"absolute gap : c*={np.round(fit_a.c_star, 4)}  z*={fit_a.z_star:.4f} "
          f"(oracle {oa:.4f})  rho={rep_a.rho:.4f}  [{fit_a.path}]")
    fit_r = solve_rdg(fp, data)
    orv = oracle_rdg(fp, data)
    rep_r = rho(fp, data, NormSpec(variant="rdg"), fit=fit_r)
    print(f"relative gap : c*={np.round(fit_r.c_star, 4)}  z*={fit_r.z_star:.4f} "
          f"(oracle {orv:.4f})  rho={rep_r.rho:.4f}  [{fit_r.path}]")
    fit_p = solve_dsp(fp, data, 2.0)
    op = oracle_dsp(fp, data, 2.0)
    rep_p = rho(fp, data, NormSpec(variant="dsp", ds_p=2.0), fit=fit_p)
    print(f"decision p=2 : c*={np.round(fit_p.c_star, 4)}  z*={fit_p.z_star:.4f} "
          f"(oracle {op:.4f})  rho={rep_p.rho:.4f}  [row {fit_p.active_row}]")


def main():
    describe("box, tight cluster near the bottom facet", SQUARE, TIGHT)
    describe("box, spread-out cluster", SQUARE, SPREAD)
    describe("pentagon (u,v)=(-2,10)", pentagon(-2.0, 10.0), PENTAGON_POINTS)
    describe("pentagon (u,v)=(4,4)", pentagon(4.0, 4.0), PENTAGON_POINTS)


if __name__ == "__main__":
    main()
