"""Command-line interface.

Subcommands:
  run       one experiment cell -> summary CSV (optionally per-trial CSV)
  sweep     a grid of cells from a key=value spec file -> summary CSV
  hardness  hardness profile of a family instance -> CSV row on stdout
  bounds    lower-bound evaluations -> CSV row on stdout
  conc-test concentration-violation simulation -> CSV row on stdout
  bench     compare the numba and numpy backends on a fixed workload
"""

from __future__ import annotations

import argparse
import csv
import sys

from .confidence import concentration_bound, simulate_concentration_violation
from .harness import (
    FamilySpec,
    SweepSpec,
    bounds_csv_row,
    hardness_csv_row,
    parse_sweep_file,
    run_sweep,
)


def _stdout_csv(header, row):
    writer = csv.writer(sys.stdout)
    writer.writerow(header)
    writer.writerow(row)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="see-bandits",
        description="Fixed-confidence 1-identification experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one (family, K, delta, algo) cell")
    run_p.add_argument("--family", required=True)
    run_p.add_argument("--K", type=int, required=True)
    run_p.add_argument("--delta", type=float, required=True)
    run_p.add_argument("--algo", required=True)
    run_p.add_argument("--trials", type=int, required=True)
    run_p.add_argument("--seed", type=int, required=True)
    run_p.add_argument("--cap", type=int, default=10 ** 8)
    run_p.add_argument("--preset", choices=("default", "paper"), default="default")
    run_p.add_argument("--mu0", type=float, default=0.5)
    run_p.add_argument("--gap", type=float, default=0.15)
    run_p.add_argument("--per-trial", dest="per_trial", default=None)
    run_p.add_argument("--out", required=True)
    run_p.add_argument("--workers", type=int, default=1)

    sweep_p = sub.add_parser("sweep", help="run a grid from a spec file")
    sweep_p.add_argument("--spec", required=True)
    sweep_p.add_argument("--out", required=True)
    sweep_p.add_argument("--per-trial", dest="per_trial", default=None)
    sweep_p.add_argument("--workers", type=int, default=1)

    hard_p = sub.add_parser("hardness", help="hardness profile CSV row")
    hard_p.add_argument("--family", required=True)
    hard_p.add_argument("--K", type=int, required=True)
    hard_p.add_argument("--mu0", type=float, default=0.5)
    hard_p.add_argument("--gap", type=float, default=0.15)

    bounds_p = sub.add_parser("bounds", help="lower-bound CSV row")
    bounds_p.add_argument("--family", required=True)
    bounds_p.add_argument("--K", type=int, required=True)
    bounds_p.add_argument("--delta", type=float, required=True)
    bounds_p.add_argument("--mu0", type=float, default=0.5)
    bounds_p.add_argument("--gap", type=float, default=0.15)

    conc_p = sub.add_parser("conc-test", help="concentration violation CSV row")
    conc_p.add_argument("--delta", type=float, required=True)
    conc_p.add_argument("--horizon", type=int, required=True)
    conc_p.add_argument("--sequences", type=int, required=True)
    conc_p.add_argument("--seed", type=int, required=True)
    conc_p.add_argument("--sigma", type=float, default=1.0)

    bench_p = sub.add_parser("bench", help="compare numba vs numpy backends")
    bench_p.add_argument("--trials", type=int, default=20)
    bench_p.add_argument("--paths", type=int, default=2000)
    bench_p.add_argument("--no-compare", action="store_true",
                         help="time only the current backend")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "run":
        spec = SweepSpec(families=(args.family,), ks=(args.K,),
                         deltas=(args.delta,), algos=(args.algo,),
                         trials=args.trials, master_seed=args.seed,
                         forced_cap=args.cap, preset=args.preset,
                         mu0=args.mu0, gap=args.gap)
        run_sweep(spec, out_path=args.out, per_trial_path=args.per_trial,
                  workers=args.workers)
        return 0

    if args.command == "sweep":
        spec = parse_sweep_file(args.spec)
        run_sweep(spec, out_path=args.out, per_trial_path=args.per_trial,
                  workers=args.workers)
        return 0

    if args.command == "hardness":
        header, row = hardness_csv_row(
            FamilySpec(args.family, args.K, args.mu0, args.gap))
        _stdout_csv(header, row)
        return 0

    if args.command == "bounds":
        header, row = bounds_csv_row(
            FamilySpec(args.family, args.K, args.mu0, args.gap), args.delta)
        _stdout_csv(header, row)
        return 0

    if args.command == "conc-test":
        count, _ = simulate_concentration_violation(
            args.sigma, args.delta, args.horizon, args.sequences, args.seed,
            return_count=True)
        _stdout_csv(
            ("delta", "horizon", "sequences", "violations", "bound"),
            (repr(args.delta), str(args.horizon), str(args.sequences),
             str(count), repr(concentration_bound(args.delta))))
        return 0

    if args.command == "bench":
        from .bench import run_benchmark
        run_benchmark(args.trials, args.paths, compare=not args.no_compare)
        return 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
