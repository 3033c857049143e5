"""Hyperplane projections, dual norms, and feasible projections onto faces.

The closed-form projection of a point onto the hyperplane a'x = b under a
p-norm is x - ((a'x - b) / dual_norm(a)) * u, where u is a unit vector (in
that p-norm) maximizing u'a. Projections onto a *face* of the feasible
region additionally keep Ax >= b and are solved as LPs for p in {1, inf}
and by an exact active-set method for the strictly convex p = 2 case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lp
from .errors import EmptyFace, NumericFailure, ValidationError, ZeroVector
from .model import ForwardProblem

_QP_MAX_ITER = 100


def dual_p(p: float) -> float:
    if p == 1.0:
        return np.inf
    if p == np.inf:
        return 1.0
    if p == 2.0:
        return 2.0
    raise ValidationError(f"unsupported norm order {p}")


def vec_norm(v, p: float) -> float:
    v = np.asarray(v, dtype=float)
    if p == 1.0:
        return float(np.abs(v).sum())
    if p == 2.0:
        return float(np.sqrt((v * v).sum()))
    if p == np.inf:
        return float(np.abs(v).max()) if v.size else 0.0
    raise ValidationError(f"unsupported norm order {p}")


def dual_norm(p: float, v) -> float:
    return vec_norm(v, dual_p(p))


def unit_maximizer(p: float, a) -> np.ndarray:
    """A vector u with ||u||_p = 1 maximizing u'a; deterministic tie-breaks.

    inf-norm: the sign pattern of a, zeros mapped to +1. 1-norm: +/- the unit
    vector of the smallest index attaining max |a_j|. 2-norm: a / ||a||_2.
    """
    a = np.asarray(a, dtype=float)
    if vec_norm(a, 2.0) <= 1e-12:
        raise ZeroVector("cannot build a maximizer for the zero vector")
    if p == np.inf:
        u = np.where(a >= 0.0, 1.0, -1.0)
        return u
    if p == 1.0:
        j = int(np.argmax(np.abs(a)))
        u = np.zeros_like(a)
        u[j] = 1.0 if a[j] >= 0 else -1.0
        return u
    if p == 2.0:
        return a / vec_norm(a, 2.0)
    raise ValidationError(f"unsupported norm order {p}")


@dataclass(frozen=True)
class ProjectionResult:
    point: np.ndarray
    eps: np.ndarray
    distance: float  # signed (a'x - b) / dual_norm(a) for hyperplane projections


def project_to_hyperplane(x_hat, a, b: float, loss_p: float) -> ProjectionResult:
    x_hat = np.asarray(x_hat, dtype=float)
    a = np.asarray(a, dtype=float)
    dn = dual_norm(loss_p, a)
    if dn <= 1e-12:
        raise ZeroVector("hyperplane normal is numerically zero")
    distance = (float(a @ x_hat) - float(b)) / dn
    point = x_hat - distance * unit_maximizer(loss_p, a)
    return ProjectionResult(point=point, eps=x_hat - point, distance=distance)


def slice_project(A, b, a_eq, b_eq: float, x_hat, p: float) -> ProjectionResult:
    """Project x_hat onto {x : Ax >= b, a_eq'x = b_eq} in the p-norm.

    Raises EmptyFace when the slice is empty. The distance field carries the
    attained p-norm (nonnegative).
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    a_eq = np.asarray(a_eq, dtype=float)
    x_hat = np.asarray(x_hat, dtype=float)

    if p == 2.0:
        point = _project_qp(A, b, a_eq, b_eq, x_hat)
    else:
        point = _project_lp(A, b, a_eq, b_eq, x_hat, p)
    eps = x_hat - point
    return ProjectionResult(point=point, eps=eps, distance=vec_norm(eps, p))


def feasible_project(fp: ForwardProblem, x_hat, row: int, p: float) -> ProjectionResult:
    """Nearest point to x_hat on the face of P where constraint ``row`` is tight."""
    return slice_project(fp.A, fp.b, fp.A[row], float(fp.b[row]), x_hat, p)


def _project_lp(A, b, a_eq, b_eq, x_hat, p):
    m, n = A.shape
    rel = [lp.GE] * m + [lp.EQ]
    rows_A = np.vstack([A, a_eq[None, :]])
    rhs = np.concatenate([b, [b_eq]])
    if p == np.inf:
        # vars [x, t]: |x_j - x_hat_j| <= t
        k = 2 * n
        G = np.zeros((k, n + 1))
        h = np.zeros(k)
        for j in range(n):
            G[2 * j, j] = -1.0
            G[2 * j, n] = 1.0
            h[2 * j] = -x_hat[j]
            G[2 * j + 1, j] = 1.0
            G[2 * j + 1, n] = 1.0
            h[2 * j + 1] = x_hat[j]
        Afull = np.vstack([np.hstack([rows_A, np.zeros((m + 1, 1))]), G])
        relfull = rel + [lp.GE] * k
        bfull = np.concatenate([rhs, h])
        c = np.zeros(n + 1)
        c[n] = 1.0
        bounds = [(-np.inf, np.inf)] * n + [(0.0, np.inf)]
    else:  # p == 1
        k = 2 * n
        G = np.zeros((k, 2 * n))
        h = np.zeros(k)
        for j in range(n):
            G[2 * j, j] = -1.0
            G[2 * j, n + j] = 1.0
            h[2 * j] = -x_hat[j]
            G[2 * j + 1, j] = 1.0
            G[2 * j + 1, n + j] = 1.0
            h[2 * j + 1] = x_hat[j]
        Afull = np.vstack([np.hstack([rows_A, np.zeros((m + 1, n))]), G])
        relfull = rel + [lp.GE] * k
        bfull = np.concatenate([rhs, h])
        c = np.concatenate([np.zeros(n), np.ones(n)])
        bounds = [(-np.inf, np.inf)] * n + [(0.0, np.inf)] * n
    sol = lp.solve_lp(lp.LpProblem(c=c, A=Afull, rel=relfull, b=bfull, bounds=bounds))
    if sol.status == lp.INFEASIBLE:
        raise EmptyFace("face is empty")
    if sol.status != lp.OPTIMAL:
        raise NumericFailure(f"projection LP ended with status {sol.status}")
    return sol.x[:x_hat.shape[0]]


def _feasible_point_on_slice(A, b, a_eq, b_eq, x_hat):
    """Any point of the slice, found by the inf-norm projection LP (kept near
    x_hat so the active-set method starts close to the optimum)."""
    return _project_lp(A, b, a_eq, b_eq, x_hat, np.inf)


def _project_qp(A, b, a_eq, b_eq, x_hat):
    """Active-set minimization of ||x - x_hat||_2^2 over the slice.

    The equality row stays in the working set; inequality rows enter when
    blocking and leave on a negative multiplier (smallest index first). The
    iteration cap guards degenerate faces.
    """
    m, n = A.shape
    x = _feasible_point_on_slice(A, b, a_eq, b_eq, x_hat)
    work = [i for i in range(m) if A[i] @ x - b[i] <= 1e-9]

    for _ in range(_QP_MAX_ITER):
        M = np.vstack([a_eq[None, :]] + [A[i][None, :] for i in work])
        d = np.concatenate([[b_eq], [b[i] for i in work]])
        # Equality-constrained projection: x* = x_hat + M' mu with M x* = d.
        MMt = M @ M.T
        mu = np.linalg.lstsq(MMt, d - M @ x_hat, rcond=None)[0]
        x_target = x_hat + M.T @ mu
        step = x_target - x
        if np.linalg.norm(step, np.inf) <= 1e-11:
            lam = np.linalg.lstsq(M.T, x - x_hat, rcond=None)[0]
            ineq_lam = lam[1:]
            if ineq_lam.size == 0 or ineq_lam.min() >= -1e-9:
                return x
            drop = int(np.argmin(ineq_lam))
            work.pop(drop)
            continue
        # Longest feasible step toward the equality-constrained optimum.
        alpha = 1.0
        blocker = -1
        for i in range(m):
            if i in work:
                continue
            denom = A[i] @ step
            if denom < -1e-12:
                cand = (b[i] - A[i] @ x) / denom
                if cand < alpha - 1e-12:
                    alpha = max(cand, 0.0)
                    blocker = i
        x = x + alpha * step
        if blocker >= 0:
            work.append(blocker)
            work.sort()
    raise NumericFailure("active-set projection did not converge")
