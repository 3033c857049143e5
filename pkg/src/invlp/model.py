"""Domain types, validation, and data-set classification.

The forward problem is min c'x over P = {x : Ax >= b}. All solvers impute a
cost vector for that problem from an ensemble of observed decisions. Types
here are immutable after construction and safe to share across threads.

Full-dimensionality of P and non-redundancy of its constraints are a user
contract and are NOT verified: checking them is an LP battery of its own and
every solver in this package remains well defined without it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError

# Absolute tolerance on constraint residuals, matching the LP engine.
FEAS_TOL = 1e-8
# Rows with norm below this are considered zero rows.
ZERO_ROW_TOL = 1e-12

ALL_FEASIBLE = "all_feasible"
ALL_BELOW = "all_below"
MIXED = "mixed"


def _as_matrix(a, name: str) -> np.ndarray:
    try:
        arr = np.asarray(a, dtype=float)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{name} is not a numeric array: {e}") from e
    if arr.ndim != 2:
        raise ValidationError(f"{name} must be a 2-D array, got ndim={arr.ndim}")
    return arr


def _as_vector(a, name: str) -> np.ndarray:
    try:
        arr = np.asarray(a, dtype=float)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{name} is not a numeric array: {e}") from e
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be a 1-D array, got ndim={arr.ndim}")
    return arr


@dataclass(frozen=True)
class CostStructure:
    """Cost cone c = C'alpha, alpha >= 0, for multi-objective weight imputation."""

    C: np.ndarray
    require_nonnegative_C: bool = True

    def __post_init__(self):
        object.__setattr__(self, "C", _as_matrix(self.C, "C"))
        if self.C.shape[0] < 1:
            raise ValidationError("C needs at least one objective row")

    @property
    def n_objectives(self) -> int:
        return self.C.shape[0]


@dataclass(frozen=True)
class ForwardProblem:
    """Feasible region Ax >= b of the forward LP whose cost is unknown.

    ``x_nonneg`` adds x >= 0 as variable bounds; it is consulted by forward
    solves and the structured (cost-cone) solvers, never by the plain
    inverse solvers, and is kept out of A so it cannot pollute per-row
    statistics.
    """

    A: np.ndarray
    b: np.ndarray
    cost_structure: Optional[CostStructure] = None
    row_labels: Optional[Sequence[str]] = None
    x_nonneg: bool = False

    def __post_init__(self):
        A = _as_matrix(self.A, "A")
        b = _as_vector(self.b, "b")
        if A.shape[0] < 1 or A.shape[1] < 1:
            raise ValidationError("A must have at least one row and one column")
        if b.shape[0] != A.shape[0]:
            raise ValidationError(
                f"b has length {b.shape[0]} but A has {A.shape[0]} rows"
            )
        if self.cost_structure is not None and self.cost_structure.C.shape[1] != A.shape[1]:
            raise ValidationError(
                f"C has {self.cost_structure.C.shape[1]} columns, expected {A.shape[1]}"
            )
        if self.row_labels is not None and len(self.row_labels) != A.shape[0]:
            raise ValidationError("row_labels length must match the number of rows")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]


@dataclass(frozen=True)
class EnsembleData:
    """Ordered set of observed decision vectors, one row per observation."""

    points: np.ndarray

    def __post_init__(self):
        try:
            pts = np.asarray(self.points, dtype=float)
        except (TypeError, ValueError) as e:
            raise ValidationError(f"points are not a numeric array: {e}") from e
        if pts.ndim == 1:
            pts = pts.reshape(1, -1)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValidationError("points must be a non-empty 2-D array")
        object.__setattr__(self, "points", pts)

    @property
    def Q(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class NormSpec:
    """Hyperparameter tuple: variant, cost normalization norm, decision-space p.

    ``ds_p`` is only consulted when variant == "dsp".
    """

    variant: str = "adg"
    normalization_norm: float = 1.0
    ds_p: float = 2.0

    def __post_init__(self):
        if self.variant not in ("adg", "rdg", "dsp"):
            raise ValidationError(f"unknown variant {self.variant!r}")
        if self.normalization_norm not in (1.0, np.inf):
            raise ValidationError("normalization_norm must be 1 or inf")
        if self.ds_p not in (1.0, 2.0, np.inf):
            raise ValidationError("ds_p must be 1, 2 or inf")


@dataclass(frozen=True)
class FeasibilityClass:
    tag: str
    per_point_residuals: np.ndarray  # (Q, m), entry a_i'x_q - b_i


@dataclass
class FitResult:
    """Imputed cost, dual certificate and per-point errors for one variant.

    ``eps`` is a length-Q array of scalar duality gaps for the objective-space
    variants and a (Q, n) array of perturbation vectors for the decision-space
    variant. ``path`` names the solution path that produced the result.
    """

    variant: str
    c_star: np.ndarray
    y_star: np.ndarray
    eps: np.ndarray
    z_star: float
    path: str
    active_row: Optional[int] = None
    diagnostics: dict = field(default_factory=dict)


@dataclass
class ValidationReport:
    ok: bool
    problems: list


def residuals(fp: ForwardProblem, points: np.ndarray) -> np.ndarray:
    """Residual matrix with entries a_i'x_q - b_i, shape (Q, m)."""
    return np.asarray(points, dtype=float) @ fp.A.T - fp.b


def validate_problem(fp: ForwardProblem, data: EnsembleData) -> ValidationReport:
    problems = []
    if not np.all(np.isfinite(fp.A)):
        problems.append("A contains non-finite entries")
    if not np.all(np.isfinite(fp.b)):
        problems.append("b contains non-finite entries")
    row_norms = np.linalg.norm(fp.A, axis=1)
    for i in np.flatnonzero(row_norms <= ZERO_ROW_TOL):
        problems.append(f"zero row {i}")
    if not np.all(np.isfinite(data.points)):
        problems.append("points contain non-finite entries")
    if data.dim != fp.n:
        problems.append(
            f"points have dimension {data.dim} but the problem has {fp.n} variables"
        )
    if fp.cost_structure is not None:
        C = fp.cost_structure.C
        if not np.all(np.isfinite(C)):
            problems.append("C contains non-finite entries")
        if fp.cost_structure.require_nonnegative_C and np.any(C < 0):
            problems.append("C has negative entries but nonnegativity is required")
    return ValidationReport(ok=not problems, problems=problems)


def centroid(data: EnsembleData) -> np.ndarray:
    return data.points.mean(axis=0)


def classify(fp: ForwardProblem, data: EnsembleData, tol: float = FEAS_TOL) -> FeasibilityClass:
    """Split the data set by feasibility.

    all_feasible: every residual >= -tol. all_below: every point satisfies
    Ax <= b + tol and at least one point is strictly infeasible. Everything
    else is mixed. Invariant under permutations of points and of rows.
    """
    res = residuals(fp, data.points)
    if res.min() >= -tol:
        tag = ALL_FEASIBLE
    elif res.max() <= tol:
        # Not all_feasible, so some residual < -tol: at least one point is
        # strictly infeasible and every point satisfies Ax <= b + tol.
        tag = ALL_BELOW
    else:
        tag = MIXED
    return FeasibilityClass(tag=tag, per_point_residuals=res)
