"""Seeded synthetic instance generators for experiments and tests.

All generators are deterministic per seed. Polytopes come with a certified
interior point; data sets are drawn relative to it. ``bounded_polytope``
includes a positively spanning core of rows so the feasible region is
bounded, which also guarantees every |b_i| stays away from zero (safe for
relative-gap baselines).
"""

from __future__ import annotations

import numpy as np

from .model import EnsembleData, ForwardProblem, classify, ALL_BELOW, MIXED


def _unit_rows(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
    rows = rng.normal(size=(m, n))
    rows /= np.linalg.norm(rows, axis=1, keepdims=True)
    return rows


def bounded_polytope(seed: int, n: int = 2, m: int = 5,
                     min_abs_b: float = 0.05) -> tuple[ForwardProblem, np.ndarray]:
    """Bounded region with an interior point; returns (problem, interior)."""
    if m < n + 1:
        raise ValueError("bounded polytopes need at least n + 1 rows")
    rng = np.random.default_rng(seed)
    core = np.vstack([np.eye(n), -np.ones((1, n)) / np.sqrt(n)])
    core = core + 0.08 * rng.normal(size=core.shape)
    extra = _unit_rows(rng, m - core.shape[0], n) if m > core.shape[0] else np.zeros((0, n))
    A = np.vstack([core, extra])
    A /= np.linalg.norm(A, axis=1, keepdims=True)
    A *= rng.uniform(0.6, 1.6, size=(m, 1))
    x0 = rng.uniform(-1.0, 1.0, size=n)
    b = A @ x0 - rng.uniform(0.4, 2.0, size=m)
    # keep right-hand sides away from zero for ratio-based baselines
    for i in range(m):
        while abs(b[i]) < min_abs_b:
            b[i] -= 0.1
    return ForwardProblem(A=A, b=b), x0


def cone_polytope(seed: int, n: int = 2, m: int = 3) -> tuple[ForwardProblem, np.ndarray]:
    """Unbounded region whose reversed counterpart {Ax <= b} is nonempty.

    Rows share a halfspace (positive first coordinate), leaving room on both
    sides; the returned interior point is strictly inside P.
    """
    rng = np.random.default_rng(seed)
    A = _unit_rows(rng, m, n)
    A[:, 0] = np.abs(A[:, 0]) + 0.3
    A /= np.linalg.norm(A, axis=1, keepdims=True)
    x0 = np.concatenate([[rng.uniform(1.0, 2.0)], rng.uniform(-0.5, 0.5, size=n - 1)])
    b = A @ x0 - rng.uniform(0.3, 1.2, size=m)
    for i in range(m):
        while abs(b[i]) < 0.05:
            b[i] -= 0.1
    return ForwardProblem(A=A, b=b), x0


def feasible_points(rng: np.random.Generator, fp: ForwardProblem, x0: np.ndarray,
                    Q: int, spread: float = 0.8) -> np.ndarray:
    """Q points strictly inside P, reached by shrinking rays from x0."""
    pts = []
    for _ in range(Q):
        d = rng.normal(size=fp.n)
        d /= np.linalg.norm(d)
        slack = fp.A @ x0 - fp.b
        rate = fp.A @ d
        steps = [slack[i] / -rate[i] for i in range(fp.m) if rate[i] < -1e-12]
        t_max = min(steps) if steps else spread * 4
        pts.append(x0 + d * rng.uniform(0.0, 0.9) * min(t_max, spread * 4))
    return np.array(pts)


def infeasible_points(rng: np.random.Generator, fp: ForwardProblem, x0: np.ndarray,
                      Q: int) -> np.ndarray:
    """Q points strictly outside P along random rays from x0."""
    pts = []
    while len(pts) < Q:
        d = rng.normal(size=fp.n)
        d /= np.linalg.norm(d)
        slack = fp.A @ x0 - fp.b
        rate = fp.A @ d
        steps = [slack[i] / -rate[i] for i in range(fp.m) if rate[i] < -1e-12]
        if not steps:
            continue
        pts.append(x0 + d * min(steps) * rng.uniform(1.2, 2.5))
    return np.array(pts)


def feasible_instance(seed: int, n: int = 2, m: int = 5, Q: int = 3):
    fp, x0 = bounded_polytope(seed, n, m)
    rng = np.random.default_rng(seed + 10_000)
    return fp, EnsembleData(feasible_points(rng, fp, x0, Q))


def mixed_instance(seed: int, n: int = 2, m: int = 5, Q: int = 3):
    """At least one point inside and one outside; classification mixed."""
    fp, x0 = bounded_polytope(seed, n, m)
    rng = np.random.default_rng(seed + 20_000)
    for _ in range(50):
        k_out = int(rng.integers(1, Q + 1)) if Q > 1 else 1
        outs = infeasible_points(rng, fp, x0, k_out)
        ins = feasible_points(rng, fp, x0, Q - k_out) if Q - k_out else np.zeros((0, fp.n))
        data = EnsembleData(np.vstack([ins, outs]) if ins.size else outs)
        if classify(fp, data).tag == MIXED:
            return fp, data
    raise RuntimeError("could not build a mixed instance")


def mixed_single_point_instance(seed: int, n: int = 2, m: int = 5):
    fp, data = mixed_instance(seed, n, m, Q=1)
    return fp, data


def all_below_instance(seed: int, n: int = 2, m: int = 4, Q: int = 2):
    """Points in the reversed region {Ax <= b} with at least one strict
    violation of P. Rows are oriented so both regions are nonempty."""
    rng = np.random.default_rng(seed)
    x0 = np.concatenate([[rng.uniform(1.5, 2.5)], rng.uniform(-0.3, 0.3, size=n - 1)])
    x_rev = -x0
    A = _unit_rows(rng, m, n)
    for i in range(m):
        d = A[i] @ (x0 - x_rev)
        if d < 0:
            A[i] = -A[i]
            d = -d
        while d < 0.5:
            A[i, 0] += 0.5 * np.sign(x0[0] - x_rev[0])
            A[i] /= np.linalg.norm(A[i])
            d = A[i] @ (x0 - x_rev)
    lo = A @ x_rev
    hi = A @ x0
    b = lo + (hi - lo) * rng.uniform(0.35, 0.65, size=m)
    for i in range(m):
        if abs(b[i]) < 0.05:
            b[i] = 0.06 if b[i] >= 0 else -0.06
    fp = ForwardProblem(A=A, b=b)
    pts = x_rev[None, :] + 0.05 * rng.normal(size=(Q, n))
    data = EnsembleData(pts)
    if classify(fp, data).tag != ALL_BELOW:
        return all_below_instance(seed + 90_001, n, m, Q)
    return fp, data


def aux_bounded_instance(seed: int, n: int = 2, m: int = 5, Q: int = 3,
                         mixed: bool = True):
    """Rows in an open halfspace, so the dual cone is pointed and the
    auxiliary battery of the relative-gap pipeline is bounded."""
    fp, x0 = cone_polytope(seed, n, m)
    rng = np.random.default_rng(seed + 30_000)
    pts = feasible_points(rng, fp, x0, Q, spread=0.6)
    if mixed and Q > 1:
        pts[-1] = x0 - np.array([rng.uniform(2.5, 4.0)] + [0.0] * (n - 1))
    return fp, EnsembleData(pts)
