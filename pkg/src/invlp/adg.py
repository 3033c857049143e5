"""Absolute duality gap variant: impute c minimizing sum_q |c'x_q - b'y|.

The dispatcher routes to analytic fast paths when the data permits:
all-feasible data collapses to the centroid and a row argmin, all-below data
to the same argmin on the sign-reversed problem, and a single mixed point to
a two-row zero-gap construction. Everything else (and every restricted cost
set) goes through the exact polyhedral decomposition of the normalization
constraint: 2n branch LPs for the inf-norm, one LP per orthant sign pattern
for the 1-norm, and a single LP when costs are restricted to be nonnegative
under the 1-norm.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import lp
from .errors import (
    DegeneratePair,
    DimensionTooLarge,
    NoFiniteSolution,
    ValidationError,
)
from .geometry import vec_norm
from .model import (
    ALL_BELOW,
    ALL_FEASIBLE,
    EnsembleData,
    FitResult,
    ForwardProblem,
    classify,
)

MAX_SIGN_DIM = 16


@dataclass(frozen=True)
class AdgConfig:
    normalization_norm: float = 1.0
    nonneg_cost: bool = False
    support_mask: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.normalization_norm not in (1.0, np.inf):
            raise ValidationError("normalization_norm must be 1 or inf")
        if self.support_mask is not None:
            object.__setattr__(
                self, "support_mask", np.asarray(self.support_mask, dtype=bool)
            )


def _row_norms(fp: ForwardProblem, p: float) -> np.ndarray:
    return np.array([vec_norm(fp.A[i], p) for i in range(fp.m)])


def row_gap_sums(fp: ForwardProblem, data: EnsembleData, norm: float) -> np.ndarray:
    """Per-row sums sum_q (a_i'x_q - b_i) / ||a_i||', signed."""
    res = data.points @ fp.A.T - fp.b
    return res.sum(axis=0) / _row_norms(fp, norm)


def _row_result(fp, data, i, norm, path, z=None):
    scale = vec_norm(fp.A[i], norm)
    c = fp.A[i] / scale
    y = np.zeros(fp.m)
    y[i] = 1.0 / scale
    eps = (data.points @ fp.A[i] - fp.b[i]) / scale
    z_star = float(np.abs(eps).sum()) if z is None else float(z)
    return FitResult(
        variant="adg",
        c_star=c,
        y_star=y,
        eps=eps,
        z_star=z_star,
        path=path,
        active_row=int(i),
    )


def solve_adg_feasible(fp: ForwardProblem, data: EnsembleData, cfg: AdgConfig) -> FitResult:
    """All points feasible: the ensemble equals a single-point problem at the
    centroid, solved by the row argmin of the scaled gap sums."""
    sums = row_gap_sums(fp, data, cfg.normalization_norm)
    i = int(np.argmin(sums))
    return _row_result(fp, data, i, cfg.normalization_norm, "adg_feasible_centroid")


def solve_adg_all_below(fp: ForwardProblem, data: EnsembleData, cfg: AdgConfig) -> FitResult:
    """Every point satisfies Ax <= b: apply the feasible path to the
    sign-reversed problem min -c'x over Ax <= b and map the row back."""
    sums = -row_gap_sums(fp, data, cfg.normalization_norm)  # sum (b_i - a_i'x_q)/||a_i||'
    i = int(np.argmin(sums))
    return _row_result(fp, data, i, cfg.normalization_norm, "adg_all_below")


def mixed_point_construction(fp: ForwardProblem, x_hat, normalization_norm: float = 1.0,
                             tol: float = 1e-8) -> FitResult:
    """Zero-gap certificate for one point with residuals of both signs.

    y places 1/(a_i'x - b_i) on an over-satisfied row i and the matching
    reciprocal on a violated row; the smallest lexicographic (i, i*) pair
    with a nonzero combined cost wins.
    """
    x_hat = np.asarray(x_hat, dtype=float)
    res = fp.A @ x_hat - fp.b
    over = np.flatnonzero(res > tol)
    under = np.flatnonzero(res < -tol)
    if over.size == 0 or under.size == 0:
        raise ValidationError("point is not mixed: needs residuals of both signs")
    for i in over:
        for j in under:
            y = np.zeros(fp.m)
            y[i] = 1.0 / res[i]
            y[j] = 1.0 / (-res[j])
            c = fp.A.T @ y
            scale = vec_norm(c, normalization_norm)
            if scale > 1e-9:
                c /= scale
                y /= scale
                return FitResult(
                    variant="adg",
                    c_star=c,
                    y_star=y,
                    eps=np.zeros(1),
                    z_star=0.0,
                    path="adg_mixed_point",
                    diagnostics={"pair": (int(i), int(j))},
                )
    raise DegeneratePair("every over/violated row pair produced a zero cost vector")


def _sign_patterns(n_free: int):
    if n_free > MAX_SIGN_DIM:
        raise DimensionTooLarge(
            f"1-norm decomposition needs 2^{n_free} branches; limit is 2^{MAX_SIGN_DIM}"
        )
    return itertools.product((1.0, -1.0), repeat=n_free)


def _gap_rows(fp: ForwardProblem, data: EnsembleData):
    """Rows t_q >= +/-(c'x_q - b'y) over variables [c (n), y (m), t (Q)]."""
    n, m, Q = fp.n, fp.m, data.Q
    rows = np.zeros((2 * Q, n + m + Q))
    rhs = np.zeros(2 * Q)
    for q in range(Q):
        rows[2 * q, :n] = -data.points[q]
        rows[2 * q, n:n + m] = fp.b
        rows[2 * q, n + m + q] = 1.0
        rows[2 * q + 1, :n] = data.points[q]
        rows[2 * q + 1, n:n + m] = -fp.b
        rows[2 * q + 1, n + m + q] = 1.0
    return rows, rhs


def _dual_rows(fp: ForwardProblem, extra: int):
    """Rows A'y - c = 0 over [c, y, extra]."""
    n, m = fp.n, fp.m
    rows = np.hstack([-np.eye(n), fp.A.T, np.zeros((n, extra))])
    return rows, np.zeros(n)


def _solve_branch(fp, data, norm_rows, norm_rhs, norm_rel, c_bounds):
    n, m, Q = fp.n, fp.m, data.Q
    dual, dual_rhs = _dual_rows(fp, Q)
    gaps, gaps_rhs = _gap_rows(fp, data)
    pad = np.zeros((norm_rows.shape[0], m + Q))
    A = np.vstack([dual, np.hstack([norm_rows, pad]), gaps])
    b = np.concatenate([dual_rhs, norm_rhs, gaps_rhs])
    rel = [lp.EQ] * n + list(norm_rel) + [lp.GE] * (2 * Q)
    obj = np.concatenate([np.zeros(n + m), np.ones(Q)])
    bounds = list(c_bounds) + [(0.0, np.inf)] * m + [(0.0, np.inf)] * Q
    sol = lp.solve_lp(lp.LpProblem(c=obj, A=A, rel=rel, b=b, bounds=bounds))
    if sol.status != lp.OPTIMAL:
        return None
    c = sol.x[:n]
    y = sol.x[n:n + m]
    eps = data.points @ c - float(fp.b @ y)
    return c, y, eps, float(np.abs(eps).sum())


def _mask_bounds(n, mask, lo, hi):
    if mask is None:
        return [(lo, hi)] * n
    return [((lo, hi) if mask[j] else (0.0, 0.0)) for j in range(n)]


def solve_adg_general(fp: ForwardProblem, data: EnsembleData, cfg: AdgConfig) -> FitResult:
    """Exact polyhedral decomposition of the normalization constraint."""
    n = fp.n
    mask = cfg.support_mask
    if mask is not None and mask.shape[0] != n:
        raise ValidationError("support_mask length must equal the cost dimension")

    best = None
    branches = 0
    if cfg.normalization_norm == np.inf:
        lo = 0.0 if cfg.nonneg_cost else -1.0
        free = [j for j in range(n) if mask is None or mask[j]]
        signs = (1.0,) if cfg.nonneg_cost else (1.0, -1.0)
        for j in free:
            for sgn in signs:
                bounds = _mask_bounds(n, mask, lo, 1.0)
                bounds[j] = (sgn, sgn)
                branches += 1
                out = _solve_branch(fp, data, np.zeros((0, n)), np.zeros(0), [], bounds)
                if out is not None and (best is None or out[3] < best[3]):
                    best = out
        path = "adg_general_linf"
    else:
        free = [j for j in range(n) if mask is None or mask[j]]
        if cfg.nonneg_cost:
            patterns = [tuple(1.0 for _ in free)]
        else:
            patterns = _sign_patterns(len(free))
        for pat in patterns:
            bounds = _mask_bounds(n, mask, 0.0, np.inf)
            norm_row = np.zeros((1, n))
            for j, sgn in zip(free, pat):
                bounds[j] = (0.0, np.inf) if sgn > 0 else (-np.inf, 0.0)
                norm_row[0, j] = sgn
            branches += 1
            out = _solve_branch(fp, data, norm_row, np.array([1.0]), [lp.EQ], bounds)
            if out is not None and (best is None or out[3] < best[3]):
                best = out
        path = "adg_general_l1" if not cfg.nonneg_cost else "adg_nonneg_lp"

    if best is None:
        raise NoFiniteSolution("every decomposition branch was infeasible")
    c, y, eps, z = best
    return FitResult(
        variant="adg",
        c_star=c,
        y_star=y,
        eps=eps,
        z_star=z,
        path=path,
        diagnostics={"branches": branches},
    )


def solve_adg(fp: ForwardProblem, data: EnsembleData, cfg: AdgConfig = AdgConfig()) -> FitResult:
    """Dispatch over fast paths and the general decomposition."""
    if data.dim != fp.n:
        raise ValidationError("data dimension does not match the problem")
    if cfg.nonneg_cost or cfg.support_mask is not None:
        return solve_adg_general(fp, data, cfg)
    cls = classify(fp, data)
    if cls.tag == ALL_FEASIBLE:
        return solve_adg_feasible(fp, data, cfg)
    if cls.tag == ALL_BELOW:
        return solve_adg_all_below(fp, data, cfg)
    if data.Q == 1:
        return mixed_point_construction(fp, data.points[0], cfg.normalization_norm)
    return solve_adg_general(fp, data, cfg)
