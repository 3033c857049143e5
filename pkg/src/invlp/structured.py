"""Cost-cone mode: impute multi-objective weights alpha with c = C'alpha.

The forward problem gains x >= 0 bounds, so dual feasibility relaxes to
C'alpha >= A'y. With C >= 0 and alpha >= 0 the 1-norm of C'alpha is the
linear functional (C'alpha)'1, which turns the absolute-gap model into a
single LP. The relative-gap model runs its b'y = 1 LP relaxation only; when
that returns alpha = 0 there is no recommended recovery, so it is an error.

Observations may be decision vectors (objective values are C x) or objective
value vectors directly; only the objective values enter the models.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import lp
from .errors import (
    InfeasibleForward,
    NoFiniteSolution,
    StructuredDegenerate,
    StructureNotNonneg,
    ValidationError,
)
from .model import EnsembleData, ForwardProblem

ALPHA_ZERO_TOL = 1e-9


@dataclass
class StructuredFit:
    alpha: np.ndarray
    c_star: np.ndarray
    y_star: np.ndarray
    eps: np.ndarray
    z_star: float
    path: str
    diagnostics: dict = field(default_factory=dict)


def _require_structure(fp: ForwardProblem):
    if fp.cost_structure is None:
        raise ValidationError("problem has no cost structure (C matrix)")
    return fp.cost_structure.C


def objective_values(fp: ForwardProblem, data: EnsembleData,
                     points_are_objectives: bool = False) -> np.ndarray:
    """Observation matrix in objective space, one row per observation."""
    C = _require_structure(fp)
    if points_are_objectives:
        if data.dim != C.shape[0]:
            raise ValidationError(
                f"objective-value points have dimension {data.dim}, expected {C.shape[0]}"
            )
        return data.points
    if data.dim != fp.n:
        raise ValidationError("decision points do not match the problem dimension")
    return data.points @ C.T


def _dual_block(fp: ForwardProblem, K: int, extra: int):
    """Rows C'alpha - A'y >= 0 over [alpha (K), y (m), extra]."""
    C = fp.cost_structure.C
    return np.hstack([C.T, -fp.A.T, np.zeros((fp.n, extra))])


def solve_structured_adg(fp: ForwardProblem, data: EnsembleData,
                         points_are_objectives: bool = False) -> StructuredFit:
    """Single LP over (alpha, y, gaps) with the simplex-style normalization
    (C'alpha)'1 = 1; requires C >= 0 elementwise."""
    C = _require_structure(fp)
    if np.any(C < 0):
        raise StructureNotNonneg("structured absolute-gap mode needs C >= 0")
    Z = objective_values(fp, data, points_are_objectives)
    K, m, Q = C.shape[0], fp.m, data.Q

    width = K + m + Q
    rows = [_dual_block(fp, K, Q)]
    rhs = [np.zeros(fp.n)]
    rel = [lp.GE] * fp.n
    norm_row = np.zeros(width)
    norm_row[:K] = C @ np.ones(fp.n)
    rows.append(norm_row[None, :])
    rhs.append([1.0])
    rel.append(lp.EQ)
    for q in range(Q):
        r1 = np.zeros(width)
        r1[:K] = -Z[q]
        r1[K:K + m] = fp.b
        r1[K + m + q] = 1.0
        rows.append(r1[None, :])
        rhs.append([0.0])
        rel.append(lp.GE)
        r2 = np.zeros(width)
        r2[:K] = Z[q]
        r2[K:K + m] = -fp.b
        r2[K + m + q] = 1.0
        rows.append(r2[None, :])
        rhs.append([0.0])
        rel.append(lp.GE)
    obj = np.concatenate([np.zeros(K + m), np.ones(Q)])
    sol = lp.solve_lp(lp.LpProblem(
        c=obj, A=np.vstack(rows), rel=rel, b=np.concatenate(rhs),
        bounds=[(0.0, np.inf)] * width,
    ))
    if sol.status != lp.OPTIMAL:
        raise NoFiniteSolution(f"structured absolute-gap LP is {sol.status}")
    alpha = sol.x[:K]
    y = sol.x[K:K + m]
    eps = Z @ alpha - float(fp.b @ y)
    return StructuredFit(
        alpha=alpha, c_star=C.T @ alpha, y_star=y, eps=eps,
        z_star=float(np.abs(eps).sum()), path="structured_adg_lp",
    )


def solve_structured_rdg(fp: ForwardProblem, data: EnsembleData,
                         points_are_objectives: bool = False) -> StructuredFit:
    """LP relaxation with b'y = 1; the gap ratios are alpha'z_q directly."""
    C = _require_structure(fp)
    Z = objective_values(fp, data, points_are_objectives)
    K, m, Q = C.shape[0], fp.m, data.Q

    width = K + m + Q
    rows = [_dual_block(fp, K, Q)]
    rhs = [np.zeros(fp.n)]
    rel = [lp.GE] * fp.n
    r = np.zeros(width)
    r[K:K + m] = fp.b
    rows.append(r[None, :])
    rhs.append([1.0])
    rel.append(lp.EQ)
    for q in range(Q):
        r1 = np.zeros(width)
        r1[:K] = -Z[q]
        r1[K + m + q] = 1.0
        rows.append(r1[None, :])
        rhs.append([-1.0])
        rel.append(lp.GE)
        r2 = np.zeros(width)
        r2[:K] = Z[q]
        r2[K + m + q] = 1.0
        rows.append(r2[None, :])
        rhs.append([1.0])
        rel.append(lp.GE)
    obj = np.concatenate([np.zeros(K + m), np.ones(Q)])
    sol = lp.solve_lp(lp.LpProblem(
        c=obj, A=np.vstack(rows), rel=rel, b=np.concatenate(rhs),
        bounds=[(0.0, np.inf)] * width,
    ))
    if sol.status != lp.OPTIMAL:
        raise NoFiniteSolution(f"structured relative-gap LP is {sol.status}")
    alpha = sol.x[:K]
    if np.abs(alpha).max() <= ALPHA_ZERO_TOL:
        raise StructuredDegenerate("relaxation imputed alpha = 0")
    y = sol.x[K:K + m]
    eps = Z @ alpha
    return StructuredFit(
        alpha=alpha, c_star=C.T @ alpha, y_star=y, eps=eps,
        z_star=float(np.abs(eps - 1.0).sum()), path="structured_rdg_lp",
    )


def gen_ensemble(fp: ForwardProblem, true_alpha, Q: int, noise: float,
                 seed: int) -> EnsembleData:
    """Q forward optima under weight vectors perturbed around true_alpha.

    Each draw is clipped at zero and renormalized to unit weight sum;
    degenerate all-zero draws are redrawn from the same stream. Deterministic
    per seed.
    """
    C = _require_structure(fp)
    true_alpha = np.asarray(true_alpha, dtype=float)
    if true_alpha.shape[0] != C.shape[0]:
        raise ValidationError("true_alpha length must match the number of objectives")
    if Q < 1:
        raise ValidationError("Q must be at least 1")
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(Q):
        alpha = None
        for _attempt in range(100):
            draw = np.clip(true_alpha + noise * rng.standard_normal(true_alpha.shape), 0.0, None)
            if draw.sum() > 1e-9:
                alpha = draw / draw.sum()
                break
        if alpha is None:
            raise NoFiniteSolution("could not draw a nonzero weight vector")
        sol = lp.solve_forward(fp, C.T @ alpha)
        if sol.status == lp.INFEASIBLE:
            raise InfeasibleForward("forward problem infeasible while generating data")
        if sol.status != lp.OPTIMAL:
            raise NoFiniteSolution("forward problem unbounded while generating data")
        points.append(sol.x)
    return EnsembleData(np.array(points))
