"""Command-line entry points.

    run <config>             integrate a configured scenario, write outputs
    rates <series.csv>       fit a decay rate to one diagnostics column
    predict                  closed-form rate predictions for parameters
    inequalities             run randomized inequality suites
    oracle                   brute-force transform cross-check

Errors print a single `error[kind]: message` line to stderr and exit
nonzero.  A run that ends in a density-floor blow-up is a reported outcome
(status blow-up, exit 0), not an error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .config import load_config
from .decay import fit_algebraic_rate, fit_envelope_rate, fit_exponential_rate, predict_rates
from .errors import EulerRieszError
from .inequalities import SUITES, run_suite
from .oracle import run_spectral_oracle
from .seriesio import read_series
from .stepping import run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eulerriesz")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="integrate a configured scenario")
    p_run.add_argument("config", help="path to a key = value config file")
    p_run.add_argument("--output", default=None, help="override output path prefix")

    p_rates = sub.add_parser("rates", help="fit a decay rate from a series file")
    p_rates.add_argument("series", help="path to a diagnostics series (.csv)")
    p_rates.add_argument("--column", default="E_mod")
    p_rates.add_argument("--kind", choices=("exp", "alg"), default="exp")
    p_rates.add_argument("--window", default=None, help="fit window 'a,b' in time")
    p_rates.add_argument("--envelope", action="store_true", help="fit local maxima only")
    p_rates.add_argument("--figure", default=None, help="also render the fit to this file")

    p_pred = sub.add_parser("predict", help="closed-form decay predictions")
    p_pred.add_argument("--dimension", "-d", type=int, required=True)
    p_pred.add_argument("--alpha", type=float, required=True)
    p_pred.add_argument("--s", type=float, required=True)
    p_pred.add_argument("--gamma", type=float, default=1.0)
    p_pred.add_argument("--lam", "--lambda", dest="lam", type=float, default=1.0)
    p_pred.add_argument("--kappa-min", type=float, default=1.0)

    p_ineq = sub.add_parser("inequalities", help="randomized inequality suites")
    p_ineq.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p_ineq.add_argument("--trials", type=int, default=100)
    p_ineq.add_argument("--seed", type=int, default=0)
    p_ineq.add_argument("--out", default=None, help="write per-trial ratios as csv")
    p_ineq.add_argument("--figure", default=None, help="render a ratio histogram")

    p_oracle = sub.add_parser("oracle", help="brute-force transform cross-check")
    p_oracle.add_argument("--suite", choices=("spectral",), default="spectral")
    p_oracle.add_argument("--n", type=int, default=8)
    p_oracle.add_argument("--dims", default="1,2", help="comma list of dimensions")
    p_oracle.add_argument("--tol", type=float, default=1e-10)

    return parser


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    result = run(cfg, output_prefix=args.output)
    print(f"status={result.status}")
    print(f"t_final={result.t_final:.17g}")
    print(f"records={len(result.records)}")
    print(f"series={result.csv_path}")
    print(f"manifest={result.manifest_path}")
    print(f"checkpoint={result.checkpoint_path}")
    if result.status == "blow-up":
        print(f"blow_up_time={result.blow_up_time:.17g}")
        print(f"blow_up_min_density={result.blow_up_min_density:.17g}")
    return 0


def _cmd_rates(args) -> int:
    data = read_series(args.series)
    if args.column not in data:
        raise EulerRieszError(f"series has no column '{args.column}'")
    t = data["t"]
    y = data[args.column]
    window = None
    if args.window is not None:
        parts = args.window.split(",")
        if len(parts) != 2:
            raise EulerRieszError(f"--window expects 'a,b', got '{args.window}'")
        window = (float(parts[0]), float(parts[1]))
    if args.envelope:
        fit = fit_envelope_rate(t, y, kind=args.kind, window=window)
    elif args.kind == "exp":
        fit = fit_exponential_rate(t, y, window=window)
    else:
        fit = fit_algebraic_rate(t, y, window=window)
    print(
        f"column={args.column} kind={fit.kind} method={fit.method} "
        f"rate={fit.rate:.17g} intercept={fit.intercept:.17g} "
        f"residual={fit.residual:.17g} n={fit.n_points} "
        f"window={fit.window[0]:.17g},{fit.window[1]:.17g}"
    )
    if args.figure is not None:
        from .report import save_decay_figure

        save_decay_figure(args.figure, t, y, fit, args.column)
        print(f"figure={args.figure}")
    return 0


def _cmd_predict(args) -> int:
    out = predict_rates(
        args.dimension, args.alpha, args.s, gamma=args.gamma, lam=args.lam,
        kappa_min=args.kappa_min,
    )
    sharp = out["sharp_rate"]
    print(f"weak_rate={out['weak_rate']:.17g}")
    print("sharp_rate=" + ("none" if sharp is None else f"{sharp:.17g}"))
    print(f"spectral_gap={out['spectral_gap']:.17g}")
    print(f"case_a={'true' if out['case_a'] else 'false'}")
    print(f"case_b={'true' if out['case_b'] else 'false'}")
    return 0


def _with_suffix(path: str, suite: str) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}_{suite}{ext}"


def _cmd_inequalities(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    multi = len(names) > 1
    for i, name in enumerate(names):
        report = run_suite(name, trials=args.trials, seed=args.seed + i)
        print(
            f"suite={report.suite} trials={report.trials} "
            f"max_ratio={report.max_ratio:.17g} mean_ratio={report.mean_ratio:.17g}"
        )
        if args.out is not None:
            out_path = _with_suffix(args.out, name) if multi else args.out
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write("\n".join(report.rows()) + "\n")
            print(f"out={out_path}")
        if args.figure is not None:
            from .report import save_ratio_figure

            fig_path = _with_suffix(args.figure, name) if multi else args.figure
            save_ratio_figure(fig_path, report)
            print(f"figure={fig_path}")
    return 0


def _cmd_oracle(args) -> int:
    dims = tuple(int(p) for p in args.dims.split(","))
    results = run_spectral_oracle(args.n, dims=dims)
    worst = 0.0
    for name, err in results:
        print(f"check={name} max_err={err:.3e}")
        worst = max(worst, err)
    ok = worst <= args.tol
    print(f"ok={'true' if ok else 'false'} worst={worst:.3e} tol={args.tol:.3e}")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "rates": _cmd_rates,
        "predict": _cmd_predict,
        "inequalities": _cmd_inequalities,
        "oracle": _cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except EulerRieszError as exc:
        kind = getattr(exc, "kind", "error")
        print(f"error[{kind}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
