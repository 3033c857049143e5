"""Dense, deterministic two-phase primal simplex.

Every LP in this package runs through :func:`solve_lp`. The solver keeps a
dense tableau and pivots with Bland's rule, which makes it immune to cycling
and bitwise deterministic for identical input. Free variables are split into
positive and negative parts at the standard-form layer; fixed variables
(lo == hi) are substituted out. Instances here are desk scale (tens of
variables), where determinism and simplicity beat sophistication.

Tolerances: pivot 1e-10, feasibility/optimality 1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import NumericFailure, ValidationError
from .model import ForwardProblem

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

PIVOT_TOL = 1e-10
TOL = 1e-9

GE, LE, EQ = ">=", "<=", "="

# Global count of simplex runs, used by tests to pin LP budgets of the
# decomposition pipelines. Single-threaded use only.
_lp_calls = 0


def lp_call_count() -> int:
    return _lp_calls


def reset_lp_call_count() -> None:
    global _lp_calls
    _lp_calls = 0


@dataclass
class LpProblem:
    """min c'x subject to rows (A, rel, b) and per-variable bounds.

    ``bounds`` is a list of (lo, hi) pairs with -inf/inf for unbounded sides;
    None means every variable is free.
    """

    c: np.ndarray
    A: np.ndarray
    rel: Sequence[str]
    b: np.ndarray
    bounds: Optional[Sequence[Tuple[float, float]]] = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        self.A = np.asarray(self.A, dtype=float)
        self.b = np.asarray(self.b, dtype=float)
        n = self.c.shape[0]
        if self.A.size == 0:
            self.A = self.A.reshape(0, n)
        if self.A.ndim != 2 or self.A.shape[1] != n:
            raise ValidationError("A must have one column per objective entry")
        if self.b.shape[0] != self.A.shape[0] or len(self.rel) != self.A.shape[0]:
            raise ValidationError("rows of A, rel and b must align")
        if not (np.all(np.isfinite(self.c)) and np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.b))):
            raise ValidationError("LP coefficients must be finite")
        for r in self.rel:
            if r not in (GE, LE, EQ):
                raise ValidationError(f"unknown relation {r!r}")


@dataclass
class LpSolution:
    status: str
    x: Optional[np.ndarray] = None
    value: Optional[float] = None
    diagnostics: dict = field(default_factory=dict)


def _standardize(prob: LpProblem):
    """Rewrite as min c'z, Az = b, z >= 0, returning a recover map to x."""
    n = prob.c.shape[0]
    bounds = prob.bounds if prob.bounds is not None else [(-np.inf, np.inf)] * n
    if len(bounds) != n:
        raise ValidationError("bounds length must match the number of variables")

    cols = []          # (var index, sign) per standard-form column
    shift = np.zeros(n)  # x = shift + sum(sign * z_col)
    fixed = np.zeros(n)
    is_fixed = np.zeros(n, dtype=bool)
    extra_rows = []    # (coeff row over std cols, rel, rhs) for finite ranges

    for j, (lo, hi) in enumerate(bounds):
        lo = -np.inf if lo is None else float(lo)
        hi = np.inf if hi is None else float(hi)
        if lo > hi + 1e-15:
            # Empty box: infeasible regardless of rows.
            return None
        if np.isfinite(lo) and np.isfinite(hi) and hi - lo <= 1e-15:
            is_fixed[j] = True
            fixed[j] = lo
            continue
        if not np.isfinite(lo) and not np.isfinite(hi):
            cols.append((j, 1.0))
            cols.append((j, -1.0))
        elif np.isfinite(lo):
            shift[j] = lo
            cols.append((j, 1.0))
            if np.isfinite(hi):
                extra_rows.append((len(cols) - 1, hi - lo))
        else:
            shift[j] = hi
            cols.append((j, -1.0))

    N = len(cols)
    k = prob.A.shape[0]
    A_std = np.zeros((k + len(extra_rows), N))
    for idx, (j, sign) in enumerate(cols):
        A_std[:k, idx] = sign * prob.A[:, j]
    b_std = prob.b - prob.A @ (shift + fixed * is_fixed)
    rel_std = list(prob.rel)
    for r, (col_idx, ub) in enumerate(extra_rows):
        A_std[k + r, col_idx] = 1.0
        rel_std.append(LE)
    b_std = np.concatenate([b_std, [ub for _, ub in extra_rows]])

    c_std = np.zeros(N)
    for idx, (j, sign) in enumerate(cols):
        c_std[idx] = sign * prob.c[j]

    def recover(z: np.ndarray) -> np.ndarray:
        x = (shift + fixed * is_fixed).copy()
        for idx, (j, sign) in enumerate(cols):
            x[j] += sign * z[idx]
        return x

    return A_std, b_std, rel_std, c_std, recover


def _pivot(T: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    basis[row] = col


def _bland(T: np.ndarray, basis: np.ndarray, obj_row: int, k: int, allowed: np.ndarray,
           max_iter: int = 50000) -> str:
    """Run simplex iterations on objective row ``obj_row``; k constraint rows."""
    for _ in range(max_iter):
        r = T[obj_row, :-1]
        candidates = np.flatnonzero(allowed & (r < -TOL))
        if candidates.size == 0:
            return OPTIMAL
        enter = int(candidates[0])
        col = T[:k, enter]
        pos = np.flatnonzero(col > PIVOT_TOL)
        if pos.size == 0:
            return UNBOUNDED
        ratios = T[pos, -1] / col[pos]
        best = ratios.min()
        ties = pos[ratios <= best + 1e-12]
        # Bland tie-break: leave the candidate with the smallest variable index.
        leave = int(ties[np.argmin(basis[ties])])
        _pivot(T, basis, leave, enter)
    raise NumericFailure("simplex iteration limit exceeded")


def solve_lp(prob: LpProblem) -> LpSolution:
    """Two-phase primal simplex. Returns statuses, never raises on a
    well-formed problem."""
    global _lp_calls
    _lp_calls += 1

    std = _standardize(prob)
    if std is None:
        return LpSolution(status=INFEASIBLE)
    A, b, rel, c, recover = std
    k, n_struct = A.shape

    # Equality form: append slack (+1 for <=, -1 for >=) columns.
    slack_cols = []
    for i, r in enumerate(rel):
        if r == LE:
            slack_cols.append((i, 1.0))
        elif r == GE:
            slack_cols.append((i, -1.0))
    n_slack = len(slack_cols)
    S = np.zeros((k, n_slack))
    for idx, (i, sign) in enumerate(slack_cols):
        S[i, idx] = sign
    A = np.hstack([A, S])
    c = np.concatenate([c, np.zeros(n_slack)])
    N = A.shape[1]

    flip = b < 0
    A[flip] *= -1.0
    b = np.where(flip, -b, b) + 0.0

    # Initial basis: a slack column usable directly (+1 after flips), else an
    # artificial.
    basis = np.full(k, -1, dtype=int)
    for idx, (i, sign) in enumerate(slack_cols):
        col = n_struct + idx
        if A[i, col] == 1.0 and basis[i] == -1:
            basis[i] = col
    art_rows = np.flatnonzero(basis == -1)
    n_art = art_rows.size
    Art = np.zeros((k, n_art))
    for idx, i in enumerate(art_rows):
        Art[i, idx] = 1.0
        basis[i] = N + idx
    n_total = N + n_art

    # Tableau rows: k constraints, then phase-2 and phase-1 objective rows.
    T = np.zeros((k + 2, n_total + 1))
    T[:k, :N] = A
    T[:k, N:n_total] = Art
    T[:k, -1] = b
    T[k, :N] = c
    # Phase-1 objective: sum of artificials; subtract their basic rows so the
    # reduced costs of basic variables are zero.
    T[k + 1, N:n_total] = 1.0
    for i in art_rows:
        T[k + 1] -= T[i]

    allowed = np.ones(n_total, dtype=bool)
    if n_art:
        status = _bland(T, basis, k + 1, k, allowed)
        if status != OPTIMAL:
            raise NumericFailure("phase 1 cannot be unbounded")
        if -T[k + 1, -1] > 1e-8:
            return LpSolution(status=INFEASIBLE)
        allowed[N:] = False
        # Drive remaining artificials out of the basis where possible.
        for i in range(k):
            if basis[i] >= N:
                piv = np.flatnonzero(allowed[:N] & (np.abs(T[i, :N]) > PIVOT_TOL))
                if piv.size:
                    _pivot(T, basis, i, int(piv[0]))

    status = _bland(T, basis, k, k, allowed)
    if status == UNBOUNDED:
        return LpSolution(status=UNBOUNDED)

    z = np.zeros(n_total)
    z[basis] = T[:k, -1]
    x = recover(z[:n_struct])
    value = float(prob.c @ x)
    return LpSolution(status=OPTIMAL, x=x, value=value)


def solve_forward(fp: ForwardProblem, c) -> LpSolution:
    """Solve the forward problem min c'x over Ax >= b (x >= 0 when flagged)."""
    c = np.asarray(c, dtype=float)
    if c.shape[0] != fp.n:
        raise ValidationError(f"cost has length {c.shape[0]}, expected {fp.n}")
    bounds = [(0.0, np.inf)] * fp.n if fp.x_nonneg else None
    prob = LpProblem(c=c, A=fp.A, rel=[GE] * fp.m, b=fp.b, bounds=bounds)
    return solve_lp(prob)


def min_abs_deviation(values, t_lo: float = -np.inf, t_hi: float = np.inf):
    """Minimize sum |v_q - t| over t in [t_lo, t_hi].

    The unconstrained minimizer is any median; clamping to the interval keeps
    optimality because the objective is convex piecewise linear in t. Returns
    (t_star, loss).
    """
    v = np.asarray(values, dtype=float)
    if t_lo > t_hi:
        raise ValidationError("empty interval")
    t = float(np.median(v))
    t = min(max(t, t_lo), t_hi)
    return t, float(np.abs(v - t).sum())
