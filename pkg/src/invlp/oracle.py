"""Independent brute-force verifiers for the three variants.

Nothing here calls the simplex engine: attainable ranges of b'y come from
basis enumeration of {y >= 0 : A'y = c} (vertices plus extreme rays), and
two-dimensional sweeps enumerate polytope vertices directly. The sweep
evaluates every admissible cost direction on an angular grid and refines
around the best windows, so discretization error shrinks to the refined
step. Row-candidate mode works in any dimension; the sweep needs n = 2 and
rank(A) = 2.

Results serve as ground truth for the solvers and to mint expected values
in tests; tolerances must allow for the final sweep resolution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .geometry import vec_norm
from .lp import min_abs_deviation
from .model import EnsembleData, ForwardProblem

_REFINE_ROUNDS = 3
_REFINE_FACTOR = 40
_REFINE_WINDOWS = 12


# ---------------------------------------------------------------------------
# basis enumeration of standard-form polyhedra {x >= 0 : Ex = f}


def _std_vertices(E: np.ndarray, f: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """All basic feasible solutions of {x >= 0 : Ex = f}."""
    k, nvar = E.shape
    r = np.linalg.matrix_rank(E, tol=1e-10)
    out = []
    for cols in itertools.combinations(range(nvar), min(r, nvar)):
        B = E[:, cols]
        sol, *_ = np.linalg.lstsq(B, f, rcond=None)
        if np.linalg.norm(B @ sol - f, np.inf) > tol:
            continue
        if sol.min() < -tol:
            continue
        x = np.zeros(nvar)
        x[list(cols)] = np.clip(sol, 0.0, None)
        out.append(x)
    return np.array(out) if out else np.zeros((0, nvar))


def _std_rays(E: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Extreme rays of {x >= 0 : Ex = 0}, normalized to unit coordinate sum."""
    k, nvar = E.shape
    E1 = np.vstack([E, np.ones(nvar)])
    return _std_vertices(E1, np.concatenate([np.zeros(k), [1.0]]), tol)


def dual_range(fp: ForwardProblem, c: np.ndarray):
    """Attainable range of b'y over {y >= 0 : A'y = c}, or None if empty."""
    E = fp.A.T
    verts = _std_vertices(E, np.asarray(c, dtype=float))
    if verts.shape[0] == 0:
        return None
    vals = verts @ fp.b
    lo, hi = float(vals.min()), float(vals.max())
    for d in _std_rays(E):
        v = float(fp.b @ d)
        if v > 1e-9:
            hi = np.inf
        elif v < -1e-9:
            lo = -np.inf
    return lo, hi


# ---------------------------------------------------------------------------
# two-dimensional machinery


def _vertices_2d(A: np.ndarray, b: np.ndarray, sense_ge: bool, tol: float = 1e-9):
    """Vertices of {Ax >= b} (or {Ax <= b}); assumes rank(A) = 2."""
    m = A.shape[0]
    pts = []
    for i, j in itertools.combinations(range(m), 2):
        M = A[[i, j]]
        if abs(np.linalg.det(M)) < 1e-11:
            continue
        x = np.linalg.solve(M, b[[i, j]])
        res = A @ x - b
        ok = res.min() >= -tol if sense_ge else res.max() <= tol
        if ok:
            pts.append(x)
    return np.array(pts) if pts else np.zeros((0, 2))


def _admissible_sector(A: np.ndarray):
    """Angular test for membership of a direction in cone{rows of A}.

    Returns a predicate over angle arrays. The conic hull of planar vectors
    is the full plane when the largest cyclic gap between their angles is
    below pi, otherwise the sector complementary to that gap.
    """
    ang = np.sort(np.mod(np.arctan2(A[:, 1], A[:, 0]), 2 * np.pi))
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * np.pi]]))
    gi = int(np.argmax(gaps))
    if gaps[gi] <= np.pi + 1e-12:
        return lambda t: np.ones(np.shape(t), dtype=bool)
    start = ang[(gi + 1) % ang.size]
    width = 2 * np.pi - gaps[gi]

    def pred(t):
        rel = np.mod(np.asarray(t) - start, 2 * np.pi)
        return rel <= width + 1e-9

    return pred


@dataclass
class _SweepContext:
    fp: ForwardProblem
    points: np.ndarray
    norm: float
    admissible: object
    vp: np.ndarray        # vertices of P
    vrev: np.ndarray      # vertices of {Ax <= b}

    def ranges(self, dirs: np.ndarray):
        """t ranges per unit direction; directions already normalized."""
        n_dir = dirs.shape[0]
        if self.vp.shape[0]:
            t_hi = (dirs @ self.vp.T).min(axis=1)
        else:
            t_hi = np.full(n_dir, np.inf)  # P empty: dual objective unbounded
        if self.vrev.shape[0]:
            t_lo = (dirs @ self.vrev.T).max(axis=1)
        else:
            t_lo = np.full(n_dir, -np.inf)
        return t_lo, t_hi

    def unit(self, theta: np.ndarray) -> np.ndarray:
        d = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        if self.norm == 1.0:
            scale = np.abs(d).sum(axis=1)
        else:
            scale = np.abs(d).max(axis=1)
        return d / scale[:, None]


def _make_context(fp: ForwardProblem, data: EnsembleData, norm: float) -> _SweepContext:
    if fp.n != 2:
        raise ValidationError("sweep oracle needs two-dimensional problems")
    if np.linalg.matrix_rank(fp.A, tol=1e-10) < 2:
        raise ValidationError("sweep oracle needs rank(A) = 2")
    return _SweepContext(
        fp=fp,
        points=data.points,
        norm=norm,
        admissible=_admissible_sector(fp.A),
        vp=_vertices_2d(fp.A, fp.b, True),
        vrev=_vertices_2d(fp.A, fp.b, False),
    )


def _sweep(ctx: _SweepContext, loss_of_theta, step: float):
    """Grid plus local refinement; returns (best value, best theta)."""
    theta = np.arange(0.0, 2 * np.pi, step)
    best_v, best_t = np.inf, None
    for _ in range(_REFINE_ROUNDS + 1):
        mask = ctx.admissible(theta)
        theta = theta[mask]
        if theta.size == 0:
            break
        vals = loss_of_theta(theta)
        order = np.argsort(vals, kind="stable")[:_REFINE_WINDOWS]
        if vals[order[0]] < best_v:
            best_v = float(vals[order[0]])
            best_t = float(theta[order[0]])
        fine = step / _REFINE_FACTOR
        windows = [np.arange(t - step, t + step, fine) for t in theta[order]]
        theta = np.unique(np.concatenate(windows)) if windows else np.zeros(0)
        step = fine
    return best_v, best_t


def _adg_losses(ctx: _SweepContext):
    def loss(theta):
        dirs = ctx.unit(theta)
        t_lo, t_hi = ctx.ranges(dirs)
        v = dirs @ ctx.points.T  # (n_dir, Q)
        med = np.median(v, axis=1)
        t = np.clip(med, t_lo, t_hi)
        return np.abs(v - t[:, None]).sum(axis=1)

    return loss


def _rdg_inner(v: np.ndarray, t_lo: float, t_hi: float) -> float:
    """Exact min of sum |v_q/t - 1| over t != 0 in [t_lo, t_hi].

    In u = 1/t the objective sum |v_q u - 1| is convex piecewise linear, so
    each sign interval is minimized over its endpoints and interior
    breakpoints u = 1/v_q. A reachable t = 0 contributes 0 when every v_q
    vanishes (the all-ratios-one convention).
    """
    best = np.inf
    if t_lo <= 1e-12 and t_hi >= -1e-12 and np.abs(v).max() <= 1e-12:
        return 0.0

    def h(us):
        return np.abs(v[None, :] * np.asarray(us)[:, None] - 1.0).sum(axis=1)

    # positive t
    if t_hi > 1e-12:
        u_lo = 0.0 if np.isinf(t_hi) else 1.0 / t_hi
        u_hi = np.inf if t_lo <= 1e-12 else 1.0 / max(t_lo, 1e-300)
        cand = [u for u in (u_lo, u_hi) if np.isfinite(u) and u > 0]
        if u_lo == 0.0:
            best = min(best, float(len(v)))  # limit t -> +inf
        bps = 1.0 / v[v > 1e-12]
        cand.extend(bps[(bps >= u_lo - 1e-15) & (bps <= u_hi)])
        if cand:
            best = min(best, float(h(np.array(cand)).min()))
    # negative t
    if t_lo < -1e-12:
        u_hi = 0.0 if np.isinf(t_lo) else 1.0 / t_lo
        u_lo = -np.inf if t_hi >= -1e-12 else 1.0 / min(t_hi, -1e-300)
        cand = [u for u in (u_lo, u_hi) if np.isfinite(u) and u < 0]
        if u_hi == 0.0:
            best = min(best, float(len(v)))  # limit t -> -inf
        bps = 1.0 / v[v < -1e-12]
        cand.extend(bps[(bps >= u_lo) & (bps <= u_hi + 1e-15)])
        if cand:
            best = min(best, float(h(np.array(cand)).min()))
    return best


def _rdg_losses(ctx: _SweepContext):
    def loss(theta):
        dirs = ctx.unit(theta)
        t_lo, t_hi = ctx.ranges(dirs)
        v = dirs @ ctx.points.T
        return np.array([
            _rdg_inner(v[i], t_lo[i], t_hi[i]) for i in range(dirs.shape[0])
        ])

    return loss


def _row_candidates_adg(fp, data, norm):
    best_v, best_c = np.inf, None
    for i in range(fp.m):
        c = fp.A[i] / vec_norm(fp.A[i], norm)
        rng = dual_range(fp, c)
        if rng is None:
            continue
        _, loss = min_abs_deviation(data.points @ c, rng[0], rng[1])
        if loss < best_v:
            best_v, best_c = loss, c
    return best_v, best_c


def _row_candidates_rdg(fp, data, norm):
    best_v, best_c = np.inf, None
    for i in range(fp.m):
        c = fp.A[i] / vec_norm(fp.A[i], norm)
        rng = dual_range(fp, c)
        if rng is None:
            continue
        loss = _rdg_inner(data.points @ c, rng[0], rng[1])
        if loss < best_v:
            best_v, best_c = loss, c
    return best_v, best_c


def oracle_adg(fp: ForwardProblem, data: EnsembleData, normalization_norm: float = 1.0,
               angular_step: float = 1e-3):
    """Best absolute-gap loss over row candidates and, for n = 2, a refined
    angular sweep of every dual-attainable direction. Returns (value, c)."""
    best_v, best_c = _row_candidates_adg(fp, data, normalization_norm)
    if fp.n == 2:
        ctx = _make_context(fp, data, normalization_norm)
        v, t = _sweep(ctx, _adg_losses(ctx), angular_step)
        if v < best_v:
            best_v = v
            best_c = ctx.unit(np.array([t]))[0]
    return best_v, best_c


def oracle_rdg(fp: ForwardProblem, data: EnsembleData, angular_step: float = 1e-3,
               normalization_norm: float = 1.0) -> float:
    best_v, _ = _row_candidates_rdg(fp, data, normalization_norm)
    if fp.n == 2:
        ctx = _make_context(fp, data, normalization_norm)
        v, _ = _sweep(ctx, _rdg_losses(ctx), angular_step)
        best_v = min(best_v, v)
    return best_v


def oracle_dsp(fp: ForwardProblem, data: EnsembleData, p: float,
               grid_step: float = 1e-3) -> float:
    """Dense grid over each face segment (n = 2 only), refined locally."""
    if fp.n != 2:
        raise ValidationError("grid oracle needs two-dimensional problems")
    best = np.inf
    for i in range(fp.m):
        a = fp.A[i]
        nrm = np.linalg.norm(a)
        x0 = a * (fp.b[i] / (nrm * nrm))
        d = np.array([-a[1], a[0]]) / nrm
        # t interval of the face along x0 + t d
        t_lo, t_hi = -np.inf, np.inf
        empty = False
        for k in range(fp.m):
            ad = fp.A[k] @ d
            rhs = fp.b[k] - fp.A[k] @ x0
            if abs(ad) < 1e-12:
                if rhs > 1e-9:
                    empty = True
                    break
            elif ad > 0:
                t_lo = max(t_lo, rhs / ad)
            else:
                t_hi = min(t_hi, rhs / ad)
        if empty or t_lo > t_hi + 1e-9:
            continue
        proj = (data.points - x0) @ d
        reach = float(np.abs(proj).max() + np.linalg.norm(data.points - x0, axis=1).max() + 1.0)
        lo = max(t_lo, -reach)
        hi = min(t_hi, reach)
        if lo > hi:
            lo = hi = min(max(t_lo, -reach), t_hi)

        def dists(ts, q):
            pts = x0[None, :] + ts[:, None] * d[None, :]
            diff = np.abs(pts - data.points[q])
            if p == 1.0:
                return diff.sum(axis=1)
            if p == np.inf:
                return diff.max(axis=1)
            return np.sqrt((diff * diff).sum(axis=1))

        ts = np.arange(lo, hi + grid_step, grid_step)
        ts = np.clip(ts, t_lo, t_hi)
        total = 0.0
        for q in range(data.Q):
            dist = dists(ts, q)
            k = int(np.argmin(dist))
            val = float(dist[k])
            glo, ghi = max(ts[k] - grid_step, t_lo), min(ts[k] + grid_step, t_hi)
            step = grid_step / _REFINE_FACTOR
            for _ in range(_REFINE_ROUNDS):
                fine = np.arange(glo, ghi + step, step)
                fine = np.clip(fine, t_lo, t_hi)
                dist = dists(fine, q)
                k = int(np.argmin(dist))
                val = float(dist[k])
                glo, ghi = max(fine[k] - step, t_lo), min(fine[k] + step, t_hi)
                step /= _REFINE_FACTOR
            total += val
        best = min(best, total)
    return best
