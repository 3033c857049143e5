"""Command-line front end.

Subcommands: fit, gof, sweep, forward, gen, check, oracle. Problems are JSON
objects with keys A (row-major array of arrays), b, optional C, points
(decision vectors, or objective-value vectors when points_are_objectives is
true), optional x_nonneg and row_labels. Reports are JSON on stdout; sweeps
are CSV. Exit codes: 0 success, 2 validation error, 3 solver error, 4
file or format error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .adg import AdgConfig, solve_adg
from .dspace import solve_dsp
from .errors import FormatError, SolverError, ValidationError
from .gof import GridSpec, check_dominance, rho, rho_sweep, sweep_to_csv
from .lp import solve_forward
from .model import (
    CostStructure,
    EnsembleData,
    ForwardProblem,
    NormSpec,
    validate_problem,
)
from .oracle import oracle_adg, oracle_dsp, oracle_rdg
from .rdg import solve_rdg
from .structured import gen_ensemble, solve_structured_adg, solve_structured_rdg

NORMS = {"l1": 1.0, "linf": np.inf}
PVALS = {"1": 1.0, "2": 2.0, "inf": np.inf}


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if np.isfinite(f) else None
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def load_problem(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise FormatError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(raw, dict) or "A" not in raw or "b" not in raw:
        raise FormatError("problem file needs at least keys A and b")
    try:
        structure = None
        if raw.get("C") is not None:
            structure = CostStructure(C=np.asarray(raw["C"], dtype=float))
        fp = ForwardProblem(
            A=np.asarray(raw["A"], dtype=float),
            b=np.asarray(raw["b"], dtype=float),
            cost_structure=structure,
            row_labels=raw.get("row_labels"),
            x_nonneg=bool(raw.get("x_nonneg", False)),
        )
        data = None
        if raw.get("points") is not None:
            data = EnsembleData(np.asarray(raw["points"], dtype=float))
    except (ValueError, ValidationError) as e:
        raise FormatError(f"malformed problem file: {e}") from e
    return fp, data, bool(raw.get("points_are_objectives", False))


def _require_points(data):
    if data is None:
        raise ValidationError("problem file has no points")
    return data


def _validate(fp, data, points_are_objectives):
    if points_are_objectives:
        return
    report = validate_problem(fp, data)
    if not report.ok:
        raise ValidationError("; ".join(report.problems))


def _fit_report(fit):
    return {
        "variant": fit.variant,
        "c_star": fit.c_star,
        "y_star": fit.y_star,
        "eps": fit.eps,
        "z_star": fit.z_star,
        "path": fit.path,
        "active_row": fit.active_row,
        "diagnostics": fit.diagnostics,
    }


def _emit(payload, out):
    text = json.dumps(_jsonable(payload), indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_vec(text):
    try:
        return np.asarray([float(v) for v in text.split(",")], dtype=float)
    except ValueError as e:
        raise ValidationError(f"cannot parse vector {text!r}") from e


def _parse_axis(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError("grid axis must be lo:hi:count")
    lo, hi, num = float(parts[0]), float(parts[1]), int(parts[2])
    if num < 2 or not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValidationError("grid bounds must be finite with count >= 2")
    return lo, hi, num


def cmd_fit(args):
    fp, data, as_obj = load_problem(args.problem)
    data = _require_points(data)
    _validate(fp, data, as_obj or args.structured)
    if args.structured:
        if args.variant == "adg":
            fit = solve_structured_adg(fp, data, as_obj)
        elif args.variant == "rdg":
            fit = solve_structured_rdg(fp, data, as_obj)
        else:
            raise ValidationError("structured mode supports adg and rdg only")
        payload = {
            "variant": args.variant,
            "structured": True,
            "alpha": fit.alpha,
            "c_star": fit.c_star,
            "y_star": fit.y_star,
            "eps": fit.eps,
            "z_star": fit.z_star,
            "path": fit.path,
            "diagnostics": fit.diagnostics,
        }
    else:
        norm = NORMS[args.norm]
        if args.variant == "adg":
            mask = None
            if args.support_mask:
                try:
                    mask = np.asarray(
                        [int(v) for v in args.support_mask.split(",")], dtype=bool
                    )
                except ValueError as e:
                    raise ValidationError(
                        f"cannot parse support mask {args.support_mask!r}"
                    ) from e
            fit = solve_adg(fp, data, AdgConfig(
                normalization_norm=norm,
                nonneg_cost=args.nonneg_cost,
                support_mask=mask,
            ))
        elif args.variant == "rdg":
            fit = solve_rdg(fp, data, norm)
        else:
            fit = solve_dsp(fp, data, PVALS[args.p], norm)
        payload = _fit_report(fit)
    _emit(payload, args.output)
    return 0


def cmd_gof(args):
    fp, data, as_obj = load_problem(args.problem)
    data = _require_points(data)
    _validate(fp, data, as_obj)
    spec = NormSpec(variant=args.variant, normalization_norm=NORMS[args.norm],
                    ds_p=PVALS[args.p])
    report = rho(fp, data, spec, skip_zero_rhs=args.skip_zero_rhs)
    _emit({
        "variant": report.variant,
        "rho": report.rho,
        "numerator": report.numerator,
        "baselines": report.baselines,
        "denominator": report.denominator,
        "excluded_rows": report.excluded_rows,
        "diagnostics": report.diagnostics,
    }, args.output)
    return 0


def cmd_sweep(args):
    fp, data, as_obj = load_problem(args.problem)
    _validate(fp, data if data is not None else EnsembleData(np.zeros((1, fp.n))), as_obj)
    if fp.n != 2:
        raise ValidationError("sweep requires a two-dimensional problem")
    lo1, hi1, n1 = _parse_axis(args.gamma1)
    lo2, hi2, n2 = _parse_axis(args.gamma2)
    spec = NormSpec(variant=args.variant, normalization_norm=NORMS[args.norm],
                    ds_p=PVALS[args.p])
    fixed = data.points if data is not None else np.zeros((0, 2))
    sweep = rho_sweep(fp, fixed, GridSpec(lo1, hi1, n1, lo2, hi2, n2), spec,
                      skip_zero_rhs=args.skip_zero_rhs)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            sweep_to_csv(sweep, fh)
    else:
        sweep_to_csv(sweep, sys.stdout)
    return 0


def cmd_forward(args):
    fp, _, _ = load_problem(args.problem)
    if (args.cost is None) == (args.alpha is None):
        raise ValidationError("provide exactly one of --cost or --alpha")
    if args.alpha is not None:
        if fp.cost_structure is None:
            raise ValidationError("--alpha needs a problem with a C matrix")
        alpha = _parse_vec(args.alpha)
        if alpha.shape[0] != fp.cost_structure.n_objectives:
            raise ValidationError("alpha length must match the number of objectives")
        cost = fp.cost_structure.C.T @ alpha
    else:
        cost = _parse_vec(args.cost)
        if cost.shape[0] != fp.n:
            raise ValidationError(f"cost must have length {fp.n}")
    sol = solve_forward(fp, cost)
    _emit({"status": sol.status, "x": sol.x, "value": sol.value}, args.output)
    return 0


def cmd_gen(args):
    fp, _, _ = load_problem(args.problem)
    if fp.cost_structure is None:
        raise ValidationError("gen needs a problem with a C matrix")
    alpha = _parse_vec(args.true_alpha)
    data = gen_ensemble(fp, alpha, args.q, args.noise, args.seed)
    payload = {
        "A": fp.A,
        "b": fp.b,
        "C": fp.cost_structure.C,
        "x_nonneg": fp.x_nonneg,
        "points": data.points,
    }
    if fp.row_labels is not None:
        payload["row_labels"] = list(fp.row_labels)
    _emit(payload, args.output)
    return 0


def cmd_check(args):
    fp, data, as_obj = load_problem(args.problem)
    data = _require_points(data)
    _validate(fp, data, as_obj)
    rep = check_dominance(fp, data, p=PVALS[args.p], normalization_norm=NORMS[args.norm])
    _emit({
        "z_a": rep.z_a, "z_r": rep.z_r, "z_p": rep.z_p, "p": rep.p,
        "f_a": rep.f_a, "f_r": rep.f_r,
        "all_feasible": rep.all_feasible,
        "dsp_dominates_adg": rep.dsp_dominates_adg,
        "adg_between_scaled_rdg": rep.adg_between_scaled_rdg,
    }, args.output)
    return 0


def cmd_oracle(args):
    fp, data, as_obj = load_problem(args.problem)
    data = _require_points(data)
    _validate(fp, data, as_obj)
    if args.variant == "adg":
        value, direction = oracle_adg(fp, data, NORMS[args.norm], args.angular_step)
        payload = {"variant": "adg", "value": value, "direction": direction}
    elif args.variant == "rdg":
        value = oracle_rdg(fp, data, args.angular_step, NORMS[args.norm])
        payload = {"variant": "rdg", "value": value}
    else:
        value = oracle_dsp(fp, data, PVALS[args.p], args.grid_step)
        payload = {"variant": "dsp", "p": args.p, "value": value}
    _emit(payload, args.output)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="invlp",
        description="Impute LP cost vectors from observed decisions and "
                    "score the fit with the coefficient of complementarity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_variant=True):
        if with_variant:
            p.add_argument("--variant", required=True, choices=["adg", "rdg", "dsp"])
        p.add_argument("--norm", default="l1", choices=list(NORMS))
        p.add_argument("--p", default="2", choices=list(PVALS))
        p.add_argument("-o", "--output", default=None)
        p.add_argument("problem")

    p = sub.add_parser("fit", help="impute a cost vector")
    common(p)
    p.add_argument("--structured", action="store_true")
    p.add_argument("--support-mask", default=None,
                   help="comma-separated 0/1 flags; zeros force c_i = 0")
    p.add_argument("--nonneg-cost", action="store_true")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("gof", help="coefficient of complementarity")
    common(p)
    p.add_argument("--skip-zero-rhs", action="store_true")
    p.set_defaults(func=cmd_gof)

    p = sub.add_parser("sweep", help="rho over a grid for one extra point")
    common(p)
    p.add_argument("--gamma1", required=True, help="lo:hi:count (use --gamma1=-2:10:61 for negative bounds)")
    p.add_argument("--gamma2", required=True, help="lo:hi:count")
    p.add_argument("--skip-zero-rhs", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("forward", help="solve the forward problem")
    common(p, with_variant=False)
    p.add_argument("--cost", default=None)
    p.add_argument("--alpha", default=None)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("gen", help="synthesize an ensemble from weights")
    common(p, with_variant=False)
    p.add_argument("--true-alpha", required=True)
    p.add_argument("--q", type=int, default=8)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="dominance relations between variants")
    common(p, with_variant=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="brute-force verification value")
    common(p)
    p.add_argument("--angular-step", type=float, default=1e-3)
    p.add_argument("--grid-step", type=float, default=1e-3)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"invlp: validation error: {e}", file=sys.stderr)
        return 2
    except SolverError as e:
        print(f"invlp: solver error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except FormatError as e:
        print(f"invlp: file error: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
