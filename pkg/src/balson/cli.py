"""Command-line surface: single fits, the benchmark harness, sampler diagnostics.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .bench import config_from_mapping, emit_outputs, run_experiment, summarize
from .dirichlet import DirichletParams, match_moments, moments, sample_batch
from .exceptions import BalsonError
from .model import Dataset, ModelSpec
from .samplers import DEFAULT_RESAMPLE_ROUNDS, DEFAULT_SAMPLE_COUNT, SamplerConfig
from .solver import BalsonConfig, FitReport, solve, uniform_prior

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="balson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit one dataset and write a JSON report")
    fit.add_argument("--input", required=True, help="CSV with header x,y")
    fit.add_argument("--order", required=True, type=int)
    fit.add_argument("--budget", type=float, default=1.0)
    fit.add_argument("--method", required=True, choices=("rs", "is", "rsirs", "isirs"))
    fit.add_argument("--samples", type=int, default=DEFAULT_SAMPLE_COUNT)
    fit.add_argument("--rounds", type=int, default=DEFAULT_RESAMPLE_ROUNDS)
    fit.add_argument("--seed", type=int, default=0)
    fit.add_argument("--prior", default="uniform", help="comma-separated list or 'uniform'")
    fit.add_argument("--output", required=True, help="JSON report path")

    bench = sub.add_parser("bench", help="run the multi-method benchmark")
    bench.add_argument("--config", required=True, help="JSON experiment config")
    bench.add_argument("--out-dir", default=None)
    bench.add_argument("--svg", action="store_true")
    bench.add_argument("--workers", type=int, default=None)

    diag = sub.add_parser("sample-diag", help="print prior-sampling moment diagnostics")
    diag.add_argument("--order", required=True, type=int)
    diag.add_argument("--prior", default="uniform")
    diag.add_argument("--samples", type=int, default=10_000)
    diag.add_argument("--seed", type=int, default=0)
    return parser


def _parse_prior(text: str, order: int) -> DirichletParams:
    if text.strip() == "uniform":
        return uniform_prior(order)
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError as err:
        raise _UsageError(f"--prior must be 'uniform' or a comma list: {err}") from err
    if len(values) != order:
        raise _UsageError(f"--prior has {len(values)} entries but --order is {order}")
    return DirichletParams(np.asarray(values))


def _read_xy_csv(path: str) -> Dataset:
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise _UsageError(f"{path}: empty input file") from None
        if [h.strip().lower() for h in header] != ["x", "y"]:
            raise _UsageError(f"{path}: expected header 'x,y', got {header}")
        xs, ys = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                xs.append(float(row[0]))
                ys.append(float(row[1]))
            except (ValueError, IndexError) as err:
                raise _UsageError(f"{path}:{lineno}: bad row {row}: {err}") from err
    return Dataset(np.asarray(xs), np.asarray(ys))


def _report_payload(report: FitReport, args) -> dict:
    diag = report.diagnostics
    return {
        "theta_star": [float(v) for v in report.theta_star.theta],
        "alpha_star": [float(v) for v in report.alpha_star.alpha],
        "omega_star": [float(v) for v in report.omega_star.values],
        "diagnostics": {
            "method": diag.method,
            "prior_alpha": list(diag.prior_alpha),
            "acceptance_rate": diag.acceptance_rate,
            "ess_per_round": list(diag.ess_per_round),
            "alpha0_trajectory": list(diag.alpha0_trajectory),
            "mean_fallback": diag.mean_fallback,
            "wall_clock_s": diag.wall_clock_s,
        },
        "config": {
            "order": args.order,
            "budget": args.budget,
            "method": args.method,
            "samples": args.samples,
            "rounds": args.rounds,
            "prior": args.prior,
        },
        "seed": args.seed,
    }


def _cmd_fit(args) -> int:
    data = _read_xy_csv(args.input)
    prior = _parse_prior(args.prior, args.order)
    cfg = BalsonConfig(
        method=args.method.upper(),
        prior=prior,
        spec=ModelSpec(args.order, args.budget),
        sampler=SamplerConfig(
            sample_count=args.samples, resample_rounds=args.rounds, seed=args.seed
        ),
    )
    report = solve(data, cfg)
    with open(args.output, "w") as handle:
        json.dump(_report_payload(report, args), handle, indent=2, sort_keys=True)
        handle.write("\n")
    print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    with open(args.config) as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as err:
            raise _UsageError(f"{args.config}: invalid JSON: {err}") from err
    if args.workers is not None:
        raw["workers"] = args.workers
    cfg = config_from_mapping(raw)
    out_dir = args.out_dir or cfg.out_dir
    if out_dir is None:
        raise _UsageError("an output directory is required (--out-dir or config out_dir)")
    table = run_experiment(cfg)
    summary = summarize(table)
    manifest = emit_outputs(table, summary, out_dir, svg=args.svg)
    for method, stats in summary.method_means.items():
        mean_mse = stats["mean_mse"]
        mean_sp = stats["mean_sparsity"]
        print(
            f"{method:>16s}  mean_mse={mean_mse:.6f}  mean_sparsity={mean_sp:.6f}  "
            f"n_ok={stats['n_ok']}"
            if mean_mse is not None
            else f"{method:>16s}  no successful repetitions"
        )
    for path in manifest:
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_sample_diag(args) -> int:
    prior = _parse_prior(args.prior, args.order)
    if args.samples < 100:
        raise _UsageError("--samples must be at least 100")
    rng = np.random.default_rng([args.seed])
    draws = sample_batch(prior, rng, args.samples)
    mean_hat = draws.mean(axis=0)
    var_hat = draws.var(axis=0)
    mean_true, var_true = moments(prior)
    recovered = match_moments(mean_hat, var_hat)
    print(f"prior alpha: {[float(a) for a in prior.alpha]}  draws: {args.samples}")
    print(f"{'dim':>4s} {'mean':>12s} {'mean_hat':>12s} {'var':>12s} {'var_hat':>12s} {'alpha_hat':>12s}")
    for i in range(args.order):
        print(
            f"{i:>4d} {mean_true[i]:>12.6f} {mean_hat[i]:>12.6f} "
            f"{var_true[i]:>12.6f} {var_hat[i]:>12.6f} {recovered.alpha[i]:>12.6f}"
        )
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "fit":
            return _cmd_fit(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_sample_diag(args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except BalsonError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as err:
        print(f"io failure: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
