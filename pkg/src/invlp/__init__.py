"""Ensemble inverse linear optimization.

Given one LP feasible region and a set of observed decisions, impute a
best-fit cost vector under an absolute-duality-gap, relative-duality-gap, or
decision-space loss, and score the fit with the coefficient of
complementarity rho.
"""

from .adg import AdgConfig, solve_adg, solve_adg_general
from .dspace import dsp_row_values, solve_dsp
from .gof import GofReport, GridSpec, check_dominance, rho, rho_sweep
from .lp import LpProblem, LpSolution, min_abs_deviation, solve_forward, solve_lp
from .model import (
    CostStructure,
    EnsembleData,
    FeasibilityClass,
    FitResult,
    ForwardProblem,
    NormSpec,
    ValidationReport,
    centroid,
    classify,
    validate_problem,
)
from .oracle import oracle_adg, oracle_dsp, oracle_rdg
from .rdg import solve_aux_K, solve_rdg, solve_rdg_general, solve_rdg_subproblems
from .structured import (
    StructuredFit,
    gen_ensemble,
    solve_structured_adg,
    solve_structured_rdg,
)

__all__ = [
    "AdgConfig",
    "CostStructure",
    "EnsembleData",
    "FeasibilityClass",
    "FitResult",
    "ForwardProblem",
    "GofReport",
    "GridSpec",
    "LpProblem",
    "LpSolution",
    "NormSpec",
    "StructuredFit",
    "ValidationReport",
    "centroid",
    "check_dominance",
    "classify",
    "dsp_row_values",
    "gen_ensemble",
    "min_abs_deviation",
    "oracle_adg",
    "oracle_dsp",
    "oracle_rdg",
    "rho",
    "rho_sweep",
    "solve_adg",
    "solve_adg_general",
    "solve_aux_K",
    "solve_dsp",
    "solve_forward",
    "solve_lp",
    "solve_rdg",
    "solve_rdg_general",
    "solve_rdg_subproblems",
    "solve_structured_adg",
    "solve_structured_rdg",
    "validate_problem",
]

__version__ = "0.1.0"
