"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 enumeration budget exceeded.
"""

import argparse
import json
import os
import sys
from dataclasses import asdict
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .graphs import BinaryGraph, trace_power
from .montecarlo import MEAN_SPACING_NOTE, SimulationConfig, convergence_series, estimate_variance, sample_lengths
from .orbits import DEFAULT_BUDGET, BudgetExceeded, c_constant, count_po, count_ppo
from .tables import SCHEMA_VERSION, render
from .variance import predict_variance, variance_table
from .words import count_lyndon

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_BUDGET = 0, 2, 3, 4

COLUMNS_HELP = """\
column order:
  count        n, L2, PO, PPO, trace, C_p
  tabulate     n, P0, hat_1 .. hat_{n_max//2}, zero, total, theorem_value,
               oracle_value, diagonal_value
  simulate     n, theorem_value, estimate, std_error, error, samples
  convergence  r, n, B, theorem_value, estimate, std_error
Exact rationals are written as "a/b" strings.
"""


class UsageError(Exception):
    pass


def _emit(args, rows, columns, config, extra=None):
    if args.out is None:
        sys.stdout.write(render(rows, columns, args.format))
        return
    manifest_path = args.out + ".manifest.json"
    text = render(rows, columns, args.format, os.path.basename(manifest_path))
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "argv": args.argv,
        "config": config,
        "seed": config.get("seed"),
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(),
        "outputs": [os.path.abspath(args.out)],
    }
    if extra:
        manifest.update(extra)
    with open(args.out, "w", newline="") as fh:
        fh.write(text)
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def _graph(p, r):
    try:
        return BinaryGraph(p, r)
    except ValueError as exc:
        raise UsageError(str(exc))


def _check_p(p):
    if p < 1 or p % 2 == 0:
        raise UsageError(f"--p must be an odd positive integer, got {p}")


def cmd_count(args):
    _check_p(args.p)
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    cp = c_constant(args.p)
    rows = []
    for n in range(args.n_max + 1):
        rows.append({
            "n": n,
            "L2": count_lyndon(2, n) if n else None,
            "PO": count_po(args.p, n) if n else None,
            "PPO": count_ppo(args.p, n),
            "trace": trace_power(args.p, 0, n) if n else None,
            "C_p": cp,
        })
    _emit(args, rows, ["n", "L2", "PO", "PPO", "trace", "C_p"], {"p": args.p, "n_max": args.n_max})


def cmd_tabulate(args):
    _check_p(args.p)
    g = _graph(args.p, args.r)
    if not 0 <= args.n_max <= g.B:
        raise UsageError(f"--n-max must lie in [0, {g.B}]")
    rows, columns = variance_table(g, args.n_max, oracle=not args.no_oracle, budget=args.budget)
    _emit(args, rows, columns, {"p": args.p, "r": args.r, "n_max": args.n_max, "budget": args.budget,
                                "oracle": not args.no_oracle})


def _theory(g, budget):
    out = []
    for n in range(g.B + 1):
        m = min(n, g.B - n)
        out.append(predict_variance(g, n, budget=budget).value if count_ppo(g.p, m) <= budget else None)
    return out


def cmd_simulate(args):
    _check_p(args.p)
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    g = _graph(args.p, args.r)
    try:
        cfg = SimulationConfig(args.p, args.r, seed=args.seed, samples=args.samples, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc))
    lengths = sample_lengths(g, cfg.seed, cfg.length_interval)
    est = estimate_variance(g, lengths, cfg)
    rows = est.rows(_theory(g, args.budget))
    extra = {"mean_spacing": est.mean_spacing, "spacings_covered": est.spacings_covered,
             "k_interval": list(est.k_interval), "mean_spacing_note": MEAN_SPACING_NOTE,
             "lengths": lengths.tolist()}
    _emit(args, rows, ["n", "theorem_value", "estimate", "std_error", "error", "samples"],
          cfg.to_dict(), extra)


def _parse_r_list(text):
    try:
        rs = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --r-list {text!r}")
    if not rs:
        raise UsageError("--r-list must name at least one r")
    return rs


def cmd_convergence(args):
    _check_p(args.p)
    rs = _parse_r_list(args.r_list)
    try:
        ratio = Fraction(args.ratio)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --ratio {args.ratio!r}")
    cfg = None
    if args.samples:
        cfg = SimulationConfig(args.p, rs[0], seed=args.seed, samples=args.samples, threads=args.threads)
    try:
        points = convergence_series(args.p, rs, ratio, cfg, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc))
    rows = [asdict(pt) for pt in points]
    _emit(args, rows, ["r", "n", "B", "theorem_value", "estimate", "std_error"],
          {"p": args.p, "r_list": rs, "ratio": str(ratio), "samples": args.samples, "seed": args.seed,
           "budget": args.budget})


def cmd_replay(args):
    try:
        with open(args.manifest) as fh:
            manifest = json.load(fh)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read manifest: {exc}", file=sys.stderr)
        return EXIT_IO
    return main(manifest["argv"])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bqgraph", description="Orbit counts and coefficient variances for binary quantum graphs.",
        epilog=COLUMNS_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, need_r=True, sim=False):
        sp.add_argument("--p", type=int, required=True, help="odd factor of V = p * 2**r")
        if need_r:
            sp.add_argument("--r", type=int, required=True, help="power of two in V")
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--out", default=None, help="output file; a manifest is written next to it")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of pseudo orbits to enumerate (default 2**24)")
        if sim:
            sp.add_argument("--samples", type=int, default=100_000)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")

    sp = sub.add_parser("count", help="closed-form orbit and pseudo-orbit counts")
    common(sp, need_r=False)
    sp.add_argument("--r", type=int, default=None, help="ignored; counts do not depend on r")
    sp.add_argument("--n-max", type=int, required=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("tabulate", help="set sizes and exact variances per n")
    common(sp)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--no-oracle", action="store_true", help="skip the pairing oracle column")
    sp.set_defaults(func=cmd_tabulate)

    sp = sub.add_parser("simulate", help="Monte Carlo estimate of every coefficient variance")
    common(sp, sim=True)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("convergence", help="variance at n = ratio * B for several r")
    common(sp, need_r=False, sim=True)
    sp.set_defaults(samples=0)
    sp.add_argument("--r-list", required=True, help="comma separated, e.g. 2,3,4")
    sp.add_argument("--ratio", default="1/2", help="n / B as a fraction (default 1/2)")
    sp.set_defaults(func=cmd_convergence)

    sp = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    sp.add_argument("manifest")
    sp.set_defaults(func=cmd_replay)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    args.argv = argv
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
