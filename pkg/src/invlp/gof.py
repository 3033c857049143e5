"""Coefficient of complementarity rho and dominance checks.

rho = 1 - z* / mean_i(baseline_i), where z* is the optimal inverse loss and
baseline_i is the loss incurred by the candidate pair built from constraint
row i. It is the analogue of R^2 for inverse LP fitting: 1 means every point
sits on one supporting hyperplane, 0 means the fit is no better than an
average constraint row.

Baselines per variant: absolute gap sum_q |a_i'x_q - b_i| / ||a_i||',
relative gap sum_q |a_i'x_q / b_i - 1| (undefined on b_i = 0 rows, which
are a hard error unless explicitly skipped), decision space the per-row
projection batteries (empty faces are excluded from the mean).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .adg import AdgConfig, solve_adg
from .dspace import dsp_row_values, solve_dsp
from .errors import BaselineUndefined, DegenerateBaseline, NumericFailure
from .geometry import vec_norm
from .lp import solve_forward
from .model import (
    ALL_FEASIBLE,
    EnsembleData,
    FitResult,
    ForwardProblem,
    NormSpec,
    classify,
)
from .rdg import ZERO_RHS_TOL, solve_rdg

RHO_SLACK = 1e-9


@dataclass
class GofReport:
    variant: str
    rho: float
    numerator: float
    baselines: np.ndarray
    denominator: float
    excluded_rows: list
    diagnostics: dict = field(default_factory=dict)


def adg_baselines(fp: ForwardProblem, data: EnsembleData, norm: float = 1.0) -> np.ndarray:
    res = np.abs(data.points @ fp.A.T - fp.b).sum(axis=0)
    scales = np.array([vec_norm(fp.A[i], norm) for i in range(fp.m)])
    return res / scales


def rdg_baselines(fp: ForwardProblem, data: EnsembleData):
    """Per-row ratio sums and the indices of zero-rhs rows (excluded)."""
    values = np.full(fp.m, np.nan)
    excluded = []
    for i in range(fp.m):
        if abs(fp.b[i]) <= ZERO_RHS_TOL:
            excluded.append(i)
        else:
            values[i] = float(np.abs(data.points @ fp.A[i] / fp.b[i] - 1.0).sum())
    return values, excluded


def rho(fp: ForwardProblem, data: EnsembleData, spec: NormSpec = NormSpec(),
        skip_zero_rhs: bool = False, adg_cfg: Optional[AdgConfig] = None,
        fit: Optional[FitResult] = None) -> GofReport:
    """Goodness of fit for one variant.

    A precomputed ``fit`` (from the matching solver and config) can be passed
    to reuse its optimal value as the numerator.
    """
    excluded: list = []
    diagnostics: dict = {}
    if spec.variant == "adg":
        cfg = adg_cfg or AdgConfig(normalization_norm=spec.normalization_norm)
        numerator = (fit or solve_adg(fp, data, cfg)).z_star
        baselines = adg_baselines(fp, data, cfg.normalization_norm)
        admitted = baselines
    elif spec.variant == "rdg":
        baselines, excluded = rdg_baselines(fp, data)
        if excluded and not skip_zero_rhs:
            raise BaselineUndefined(
                f"rows {excluded} have zero right-hand side; "
                "pass skip_zero_rhs to average over the rest"
            )
        numerator = (fit or solve_rdg(fp, data, spec.normalization_norm)).z_star
        admitted = baselines[np.isfinite(baselines)]
    else:
        if fit is not None:
            numerator = fit.z_star
            values = fit.diagnostics.get("row_values")
            if values is None:
                values = dsp_row_values(fp, data, spec.ds_p, diagnostics)
        else:
            values = dsp_row_values(fp, data, spec.ds_p, diagnostics)
            numerator = float(values.min())
        baselines = values
        excluded = [int(i) for i in np.flatnonzero(~np.isfinite(values))]
        admitted = values[np.isfinite(values)]

    if admitted.size == 0:
        raise DegenerateBaseline("no admissible baseline rows")
    denominator = float(np.mean(admitted))
    if denominator <= 1e-12:
        raise DegenerateBaseline("baseline mean is numerically zero")
    raw = 1.0 - numerator / denominator
    # rho >= 0 is guaranteed only when every constraint-row candidate is an
    # admissible cost vector; support masks or sign restrictions can push a
    # restricted fit below every baseline's complement.
    restricted = adg_cfg is not None and (
        adg_cfg.nonneg_cost or adg_cfg.support_mask is not None
    )
    if raw > 1.0 + RHO_SLACK or (raw < -RHO_SLACK and not restricted):
        raise NumericFailure(f"rho = {raw} escaped [0, 1] beyond tolerance")
    diagnostics["raw_rho"] = float(raw)
    return GofReport(
        variant=spec.variant,
        rho=float(min(max(raw, 0.0), 1.0)),
        numerator=float(numerator),
        baselines=baselines,
        denominator=denominator,
        excluded_rows=excluded,
        diagnostics=diagnostics,
    )


@dataclass(frozen=True)
class GridSpec:
    lo1: float
    hi1: float
    num1: int
    lo2: float
    hi2: float
    num2: int

    def axis1(self) -> np.ndarray:
        return np.linspace(self.lo1, self.hi1, self.num1)

    def axis2(self) -> np.ndarray:
        return np.linspace(self.lo2, self.hi2, self.num2)


@dataclass
class SweepResult:
    gamma1: np.ndarray
    gamma2: np.ndarray
    rho: np.ndarray  # (num1, num2)


def rho_sweep(fp: ForwardProblem, fixed_points, grid: GridSpec,
              spec: NormSpec = NormSpec(), skip_zero_rhs: bool = False) -> SweepResult:
    """rho over a grid of positions for one additional observation.

    Cells where the solve or the baselines fail produce NaN. The
    decision-space variant reuses the fixed points' per-row projections
    across cells; results are identical to calling :func:`rho` per cell.
    """
    fixed = np.asarray(fixed_points, dtype=float)
    g1, g2 = grid.axis1(), grid.axis2()
    out = np.full((grid.num1, grid.num2), np.nan)
    if spec.variant == "dsp":
        _dsp_sweep(fp, fixed, g1, g2, spec.ds_p, out)
        return SweepResult(gamma1=g1, gamma2=g2, rho=out)
    for i, a in enumerate(g1):
        for j, c in enumerate(g2):
            pts = np.vstack([fixed, [[a, c]]]) if fixed.size else np.array([[a, c]])
            try:
                report = rho(fp, EnsembleData(pts), spec, skip_zero_rhs=skip_zero_rhs)
                out[i, j] = report.rho
            except Exception:
                pass
    return SweepResult(gamma1=g1, gamma2=g2, rho=out)


def _dsp_sweep(fp, fixed, g1, g2, p, out):
    from .errors import EmptyFace
    from .geometry import feasible_project

    base = np.zeros(fp.m)
    alive = np.ones(fp.m, dtype=bool)
    for i in range(fp.m):
        try:
            for q in range(fixed.shape[0] if fixed.size else 0):
                base[i] += feasible_project(fp, fixed[q], i, p).distance
        except (EmptyFace, NumericFailure):
            alive[i] = False
    for ii, a in enumerate(g1):
        for jj, c in enumerate(g2):
            point = np.array([a, c])
            values = np.full(fp.m, np.inf)
            for i in np.flatnonzero(alive):
                try:
                    values[i] = base[i] + feasible_project(fp, point, i, p).distance
                except (EmptyFace, NumericFailure):
                    pass
            finite = values[np.isfinite(values)]
            if finite.size == 0:
                continue
            denom = float(finite.mean())
            if denom <= 1e-12:
                continue
            raw = 1.0 - float(values.min()) / denom
            if -RHO_SLACK <= raw <= 1.0 + RHO_SLACK:
                out[ii, jj] = min(max(raw, 0.0), 1.0)


def sweep_to_csv(sweep: SweepResult, fh) -> None:
    """Row-major triples gamma1,gamma2,rho; NaN cells emitted as nan."""
    fh.write("gamma1,gamma2,rho\n")
    for i, a in enumerate(sweep.gamma1):
        for j, c in enumerate(sweep.gamma2):
            v = sweep.rho[i, j]
            fh.write(f"{a:.12g},{c:.12g},{'nan' if not np.isfinite(v) else format(v, '.12g')}\n")


@dataclass
class DominanceReport:
    z_a: float
    z_r: float
    z_p: float
    p: float
    f_a: float
    f_r: float
    dual_value_a: float
    dual_value_r: float
    all_feasible: bool
    dsp_dominates_adg: Optional[bool]
    adg_between_scaled_rdg: bool
    adg_between_certified_rdg: bool
    slack: float = 1e-7


def check_dominance(fp: ForwardProblem, data: EnsembleData, p: float = 2.0,
                    normalization_norm: float = 1.0) -> DominanceReport:
    """Evaluate z_p >= z_A (feasible data) and |f_R| z_R >= z_A >= |f_A| z_R.

    The f values are the forward optima under the two imputed costs. For
    all-feasible data they coincide with the certificates' dual values b'y*
    and the sandwich inequality is a theorem. For mixed data the optimal
    certificate may pin b'y* strictly below the forward optimum, in which
    case only the certificate form |b'y_R| z_R >= z_A >= |b'y_A| z_R is
    guaranteed; both versions are reported.
    """
    fit_a = solve_adg(fp, data, AdgConfig(normalization_norm=normalization_norm))
    fit_r = solve_rdg(fp, data, normalization_norm)
    fit_p = solve_dsp(fp, data, p, normalization_norm)
    f_a = solve_forward(fp, fit_a.c_star)
    f_r = solve_forward(fp, fit_r.c_star)
    if f_a.status != "optimal" or f_r.status != "optimal":
        raise NumericFailure("forward problem not solvable under an imputed cost")
    slack = 1e-7
    feas = classify(fp, data).tag == ALL_FEASIBLE
    dsp_dom = bool(fit_p.z_star >= fit_a.z_star - 1e-8) if feas else None
    dv_a = float(fp.b @ fit_a.y_star)
    dv_r = float(fp.b @ fit_r.y_star)
    left = abs(f_r.value) * fit_r.z_star >= fit_a.z_star - slack
    right = fit_a.z_star >= abs(f_a.value) * fit_r.z_star - slack
    cert_left = abs(dv_r) * fit_r.z_star >= fit_a.z_star - slack
    cert_right = fit_a.z_star >= abs(dv_a) * fit_r.z_star - slack
    return DominanceReport(
        z_a=fit_a.z_star, z_r=fit_r.z_star, z_p=fit_p.z_star, p=p,
        f_a=f_a.value, f_r=f_r.value,
        dual_value_a=dv_a, dual_value_r=dv_r,
        all_feasible=feas,
        dsp_dominates_adg=dsp_dom,
        adg_between_scaled_rdg=bool(left and right),
        adg_between_certified_rdg=bool(cert_left and cert_right),
        slack=slack,
    )
