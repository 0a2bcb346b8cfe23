"""Command-line front end.

Subcommands: compute, check, reproduce, fuzz, scan. Exit codes: 0 when all
checks pass or the computation succeeds, 1 when at least one in-region
violation or reference mismatch occurred, 2 on input or validation errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

import numpy as np

from . import diagnostics, jsonio, metric, skew
from .fixtures import REPRODUCTION_IDS
from .fuzz import RandomModelConfig, run_fuzz, scan_grid
from .inequalities import check_inequality, registry_ids, reproduce_example
from .linalg import SingularStateError, ValidationError
from .monotone import parse_function, wyd
from .skew import AlphaGamma


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="problem JSON file (rho, A, B, parameters)")


def _grid(text: str) -> tuple[float, ...]:
    vals = tuple(float(v) for v in text.replace(",", " ").split())
    if not vals:
        raise argparse.ArgumentTypeError("empty grid")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qskew", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="emit every quantity for one problem instance")
    _add_input(p)
    p.add_argument("--alpha", type=float, help="exponent for the alpha family (default 0.5)")
    p.add_argument("--gamma", type=float, help="mixing weight (default 0.5)")
    p.add_argument("--f", type=str, help="monotone function KIND[:ALPHA], e.g. WY or WYD:0.3")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("check", help="evaluate inequality margins on one instance")
    _add_input(p)
    p.add_argument("--id", required=True, help="inequality id or 'all'")
    p.add_argument("--tol", type=float, default=1e-8, help="relative tolerance factor")
    p.add_argument("--alpha", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--f", type=str)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("reproduce", help="run the stored reference instances")
    p.add_argument("--id", help="fixture id (default: all)")
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("fuzz", help="randomized margin sweep over seeded trials")
    p.add_argument("--seed", type=int, required=True, help="base seed (all randomness derives from it)")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--id", required=True, help="inequality id or 'all'")
    p.add_argument("--alpha-grid", type=_grid, default=None)
    p.add_argument("--gamma-grid", type=_grid, default=None)
    p.add_argument("--pin-fixture", help="replace trial 0 with a stored fixture")
    p.add_argument("--mix-floor", type=float, default=0.05)
    p.add_argument("--scale", type=float, default=1.0)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("scan", help="margin table over an (alpha, gamma) grid")
    _add_input(p)
    p.add_argument("--id", required=True)
    p.add_argument("--alpha-grid", type=_grid, required=True)
    p.add_argument("--gamma-grid", type=_grid, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_scan)
    return parser


def _effective_params(problem, args):
    alpha = args.alpha if args.alpha is not None else problem.alpha
    gamma = args.gamma if getattr(args, "gamma", None) is not None else problem.gamma
    f = parse_function(args.f) if getattr(args, "f", None) else problem.f
    return alpha, gamma, f


def _cmd_compute(args) -> int:
    problem = jsonio.load_problem(args.input)
    alpha, gamma, f = _effective_params(problem, args)
    alpha = 0.5 if alpha is None else float(alpha)
    gamma = 0.5 if gamma is None else float(gamma)
    f = f if f is not None else wyd(alpha) if 1e-6 <= alpha <= 1 - 1e-6 else wyd(0.5)
    rho, a, b = problem.rho, problem.a, problem.b
    params = AlphaGamma(alpha, gamma)

    out = {
        "alpha": alpha,
        "gamma": gamma,
        "f": f.label(),
        "variance": {"A": skew.variance(rho, a), "B": skew.variance(rho, b)},
        "covariance": skew.covariance(rho, a, b),
        "trace_commutator_sq": None,
        "wyd": {},
        "corr_alpha": skew.corr_alpha(rho, a, b, alpha),
        "corr_alpha_gamma": skew.corr_alpha_gamma(rho, a, b, params),
        "corr_sym": skew.corr_sym(rho, a, b, params),
        "metric": None,
        "diagnostics": {},
    }
    from .linalg import commutator

    out["trace_commutator_sq"] = abs(complex(np.trace(rho.mat @ commutator(a, b)))) ** 2
    with diagnostics.collect_clamps() as events:
        for label, obs in (("A", a), ("B", b)):
            out["wyd"][label] = {
                "i": skew.wyd_skew_information(rho, obs, alpha),
                "j": skew.wyd_j(rho, obs, alpha),
                "u": skew.u_alpha(rho, obs, alpha),
            }
        try:
            rho.require_strictly_positive()
            mq = {}
            for label, obs in (("A", a), ("B", b)):
                m = metric.metric_quantities(rho, f, obs)
                mq[label] = {"i": m.i_f, "j": m.j_f, "u": m.u_f, "c_tilde": m.c_tilde}
            mq["corr_f"] = metric.corr_f(rho, f, a, b)
            mq["f0"] = f.f0
            out["metric"] = mq
        except SingularStateError as exc:
            out["diagnostics"]["metric_skipped"] = str(exc)
    if events:
        out["diagnostics"]["clamps"] = [{"label": lab, "value": val} for lab, val in events]
    print(jsonio.dumps(out))
    return 0


def _check_ids(arg: str) -> list[str]:
    if arg.strip().lower() == "all":
        return list(registry_ids())
    return [arg]


def _cmd_check(args) -> int:
    problem = jsonio.load_problem(args.input)
    alpha, gamma, f = _effective_params(problem, args)
    results = []
    for ineq in _check_ids(args.id):
        results.append(
            check_inequality(
                ineq,
                problem.rho,
                problem.a,
                problem.b,
                alpha=alpha,
                gamma=gamma,
                f=f,
                tol_factor=args.tol,
            )
        )
    violations = sum(1 for r in results if r.in_region and not r.holds)
    print(jsonio.dumps({"results": [r.to_dict() for r in results], "violations": violations}))
    return 1 if violations else 0


def _cmd_reproduce(args) -> int:
    names = [args.id] if args.id else list(REPRODUCTION_IDS)
    bad = 0
    for name in names:
        result, fx = reproduce_example(name)
        ok = result.diagnostics["matches_reference"]
        bad += 0 if ok else 1
        print(
            f"{fx.name}: inequality={result.id} computed={result.margin:.10g} "
            f"reference={fx.reference:.10g} |diff|={result.diagnostics['reference_abs_error']:.3e} "
            f"tol={fx.tolerance:g} status={'ok' if ok else 'MISMATCH'}"
        )
    return 1 if bad else 0


def _cmd_fuzz(args) -> int:
    kwargs = {}
    if args.alpha_grid is not None:
        kwargs["alpha_grid"] = args.alpha_grid
    if args.gamma_grid is not None:
        kwargs["gamma_grid"] = args.gamma_grid
    ids = tuple(registry_ids()) if args.id.strip().lower() == "all" else (args.id,)
    config = RandomModelConfig(
        seed=args.seed,
        dim=args.dim,
        trials=args.trials,
        mix_floor=args.mix_floor,
        scale=args.scale,
        inequality_ids=ids,
        pin_fixture=args.pin_fixture,
        **kwargs,
    )
    report = run_fuzz(config)
    print(jsonio.dumps(report.to_dict()))
    return 1 if report.total_violations else 0


def _cmd_scan(args) -> int:
    problem = jsonio.load_problem(args.input)
    rows = scan_grid(problem.rho, problem.a, problem.b, args.id, args.alpha_grid, args.gamma_grid)
    if args.format == "csv":
        sys.stdout.write(jsonio.scan_rows_to_csv(rows))
    else:
        print(
            jsonio.dumps(
                [
                    {"alpha": r.alpha, "gamma": r.gamma, "margin": r.margin, "in_region": r.in_region}
                    for r in rows
                ]
            )
        )
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
