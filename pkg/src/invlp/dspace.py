"""Decision-space variant: project the data onto each constraint face.

An optimal cost vector is always a normalized constraint row, so the solve
reduces to m per-row batteries: the inner problem separates over points into
feasible projections onto the face where that row is tight, and the outer
problem takes the row with the smallest aggregate projection distance. Rows
with empty faces score infinity rather than erroring; the optimality search
only needs the nonempty ones.
"""

from __future__ import annotations

import numpy as np

from . import lp
from .errors import EmptyFace, InfeasibleForward, NoFiniteSolution, NumericFailure, ValidationError
from .geometry import feasible_project, vec_norm
from .model import EnsembleData, FitResult, ForwardProblem


def dsp_row_values(fp: ForwardProblem, data: EnsembleData, p: float,
                   diagnostics: dict | None = None) -> np.ndarray:
    """Aggregate projection distance of the data onto each row's face.

    Returns a length-m vector; empty faces and rows whose projections fail
    numerically get inf (failures are recorded in ``diagnostics`` when a
    dict is supplied).
    """
    values = np.full(fp.m, np.inf)
    for i in range(fp.m):
        total = 0.0
        try:
            for q in range(data.Q):
                total += feasible_project(fp, data.points[q], i, p).distance
        except EmptyFace:
            continue
        except NumericFailure:
            if diagnostics is not None:
                diagnostics.setdefault("numeric_failures", []).append(i)
            continue
        values[i] = total
    return values


def solve_dsp(fp: ForwardProblem, data: EnsembleData, p: float,
              normalization_norm: float = 1.0) -> FitResult:
    if p not in (1.0, 2.0, np.inf):
        raise ValidationError("p must be 1, 2 or inf")
    if data.dim != fp.n:
        raise ValidationError("data dimension does not match the problem")
    diagnostics: dict = {}
    values = dsp_row_values(fp, data, p, diagnostics)
    if not np.isfinite(values).any():
        feas = lp.solve_lp(lp.LpProblem(
            c=np.zeros(fp.n), A=fp.A, rel=[lp.GE] * fp.m, b=fp.b))
        if feas.status == lp.INFEASIBLE:
            raise InfeasibleForward("the feasible region is empty")
        raise NoFiniteSolution("no constraint face admits a projection")
    i = int(np.argmin(values))
    scale = vec_norm(fp.A[i], normalization_norm)
    c = fp.A[i] / scale
    y = np.zeros(fp.m)
    y[i] = 1.0 / scale
    eps = np.vstack([
        feasible_project(fp, data.points[q], i, p).eps for q in range(data.Q)
    ])
    diagnostics["row_values"] = values
    return FitResult(
        variant="dsp",
        c_star=c,
        y_star=y,
        eps=eps,
        z_star=float(values[i]),
        path="dsp_rows",
        active_row=i,
        diagnostics=diagnostics,
    )
