import argparse
import logging
import sys
import traceback
from pathlib import Path
from typing import List, Optional

import dotenv

from data_models import SortKey, SweepConfig
from pipeline.analyze import (
    analyze_gof,
    analyze_large_orders,
    analyze_normality,
    analyze_small_orders,
    analyze_window,
)
from pipeline.checks import oracle_check, verify_profiles
from pipeline.store import RecordFormatError, merge_files, read_profiles
from pipeline.sweep import PRESETS, sweep
from settings import Settings

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

ANALYSES = ("normality", "gof", "window", "small-orders", "large-orders")


class UsageError(Exception):
    pass


def _run_sweep(args: argparse.Namespace, settings: Settings) -> int:
    if args.preset:
        lo, hi = PRESETS[args.preset]
    elif args.lo is not None and args.hi is not None:
        lo, hi = args.lo, args.hi
    else:
        raise UsageError("sweep needs --preset or both --from and --to")
    config = SweepConfig(lo=lo, hi=hi, workers=args.workers or settings.workers, output=args.out)
    try:
        written = sweep(config, segment_size=settings.sieve_segment)
    except OSError as e:
        raise UsageError(f"cannot write {config.output}: {e}") from e
    print(f"Swept [{lo}, {hi}]: {written} profiles written to {config.output}")
    return EXIT_OK


def _run_analyze(args: argparse.Namespace, settings: Settings) -> int:
    files = [read_profiles(path) for path in args.inputs]
    profiles = merge_files(files)
    out_dir = Path(args.out_dir)

    print(f"-------------------- analyze {args.analysis} --------------------")
    for f in files:
        print(f"  input {f.describe()}")

    if args.analysis == "normality":
        lines = analyze_normality(
            profiles,
            out_dir,
            bin_width=args.bins or settings.bin_width,
            replicates=settings.rj_replicates,
            seed=settings.seed,
        )
    elif args.analysis == "gof":
        lines = analyze_gof(
            profiles,
            out_dir,
            exclude_special=args.exclude_special,
            orders=args.orders,
            expected_floor=settings.expected_floor,
        )
    elif args.analysis == "window":
        lines = analyze_window(
            profiles,
            out_dir,
            window=args.window or settings.window,
            step=args.step or settings.window_step,
            sort_key=SortKey(args.sort_key),
            exclude_special=args.exclude_special,
            synthetic=args.synthetic,
            seed=args.seed if args.seed is not None else settings.seed,
            expected_floor=settings.expected_floor,
        )
    elif args.analysis == "small-orders":
        lines = analyze_small_orders(profiles, out_dir)
    else:
        lines = analyze_large_orders(profiles, out_dir)

    print("\n".join(lines))
    print(f"Reports written to {out_dir}")
    return EXIT_OK


def _run_verify(args: argparse.Namespace, settings: Settings) -> int:
    data = read_profiles(args.input)
    summary = verify_profiles(data.profiles)
    print(f"Verified {summary.profiles} profiles from {data.path}")
    for theorem, count in summary.per_theorem.items():
        print(f"  {theorem:<14} {count} violation(s)")
    if summary.passed:
        return EXIT_OK
    print("*VIOLATIONS*:")
    for p, theorem, detail in summary.violations:
        print(f"  p={p} {theorem}: {detail}")
    return EXIT_FAILED


def _run_oracle(args: argparse.Namespace, settings: Settings) -> int:
    try:
        summary = oracle_check(args.max_p, g_max_p=args.g_max_p, budget=settings.oracle_budget)
    except ValueError as e:
        raise UsageError(str(e)) from e
    print(f"{summary.primes_checked} primes checked, {summary.g_primes_checked} G(p) identities confirmed")
    if summary.passed:
        return EXIT_OK
    print(f"*COUNTEREXAMPLE*: {summary.counterexample}")
    return EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Fixed points of the self-power map x^x mod p: census, theorem checks, model tests."
    )
    parser.add_argument("--verbose", action="store_true", help="Log debug diagnostics")
    commands = parser.add_subparsers(dest="command", required=True)

    sweep_cmd = commands.add_parser("sweep", help="Census every prime in a range")
    sweep_cmd.add_argument("--from", dest="lo", type=int, help="Lower bound (inclusive)")
    sweep_cmd.add_argument("--to", dest="hi", type=int, help="Upper bound (inclusive)")
    sweep_cmd.add_argument("--preset", choices=sorted(PRESETS), help="Named prime range")
    sweep_cmd.add_argument("--workers", type=int, help="Worker processes")
    sweep_cmd.add_argument("--out", required=True, help="Profile file to write")
    sweep_cmd.set_defaults(handler=_run_sweep)

    analyze_cmd = commands.add_parser("analyze", help="Statistical analysis of swept profiles")
    analyze_cmd.add_argument("analysis", choices=ANALYSES)
    analyze_cmd.add_argument(
        "--in", dest="inputs", action="append", required=True, help="Profile file (repeatable)"
    )
    analyze_cmd.add_argument("--out-dir", required=True, help="Directory for CSV reports")
    analyze_cmd.add_argument(
        "--exclude-special", action="store_true", help="Also exclude orders 3, 4 and 6"
    )
    analyze_cmd.add_argument("--orders", type=int, nargs="+", help="gof: one test per listed order")
    analyze_cmd.add_argument("--window", type=int, help="window: cells per window")
    analyze_cmd.add_argument("--step", type=int, help="window: cells between windows")
    analyze_cmd.add_argument(
        "--sort-key", choices=[k.value for k in SortKey], default=SortKey.order.value
    )
    analyze_cmd.add_argument(
        "--synthetic", action="store_true", help="window: resample cells from the binomial model"
    )
    analyze_cmd.add_argument("--seed", type=int, help="Seed for --synthetic")
    analyze_cmd.add_argument("--bins", type=float, help="normality: histogram bin width")
    analyze_cmd.set_defaults(handler=_run_analyze)

    verify_cmd = commands.add_parser("verify", help="Check profiles against the exact theorems")
    verify_cmd.add_argument("--in", dest="input", required=True, help="Profile file")
    verify_cmd.set_defaults(handler=_run_verify)

    oracle_cmd = commands.add_parser("oracle-check", help="Compare against brute force")
    oracle_cmd.add_argument("--max-p", type=int, required=True, help="Largest prime to check")
    oracle_cmd.add_argument(
        "--g-max-p", type=int, default=61, help="Largest prime for the G(p) brute force"
    )
    oracle_cmd.set_defaults(handler=_run_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run one sub-command. Returns the exit code:
    0 success, 1 verification or oracle failure, 2 usage or input error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        return args.handler(args, Settings.from_env())
    except (UsageError, RecordFormatError, ValueError) as e:
        print(f"*ERROR*: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        print(f"*CRITICAL ERROR*: {e}", file=sys.stderr)
        print(f"*FULL TRACEBACK*:\n{traceback.format_exc()}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    dotenv.load_dotenv()
    sys.exit(main())
