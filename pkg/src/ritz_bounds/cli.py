"""Command-line entry point.

    ritz-bounds run <config.json>
    ritz-bounds figure1 [--out DIR]
    ritz-bounds optimize-shift <config.json> --target IDX --error EPS [--n-cap N]

Exit codes: 0 success, 1 config/validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bounds import optimize_shift
from .errors import ConfigError, RitzBoundsError
from .harness import emit_csv, figure1_config, figure1_report, load_config, run_experiment

def _cmd_run(args) -> int:
    config = load_config(args.config)
    records = run_experiment(config)
    if config.output:
        emit_csv(records, config.output)
    else:
        emit_csv(records, sys.stdout)
    return 0


def _cmd_figure1(args) -> int:
    out_dir = args.out
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "figure1.csv")
    config = figure1_config(output=path)
    records = run_experiment(config)
    emit_csv(records, path)
    print(f"wrote {path} ({len(records)} records)")
    for line in figure1_report(config):
        print(line)
    print("plot recipe (error vs bound curves, log scale):")
    # single-quote the shell argument so $2/$5/$7 reach gnuplot unexpanded
    print(
        "  gnuplot -e 'set datafile separator \",\"; set logscale y; "
        'plot "< tail -n +2 %s" using 1:($2==23?$5:1/0) title "error 23", '
        '"" using 1:(stringcolumn(6) eq "interior-exact" && $2==23 ? $7:1/0) '
        "title \"bound 23\"'" % path
    )
    return 0


def _cmd_optimize_shift(args) -> int:
    config = load_config(args.config)
    cap = args.n_cap if args.n_cap is not None else config.max_dim
    choice = optimize_shift(config.spectrum, config.overlaps, args.target, args.error, cap)
    if choice.kind == "interior":
        print(f"shift {choice.shift:.17g} (interior bound)")
        print(f"inner dimension {choice.inner_dim}, ambient dimension {choice.ambient_dim}")
    else:
        sign = "+inf" if choice.kind == "extremal-top" else "-inf"
        print(f"shift {sign} (plain extremal bound, {choice.kind})")
        print(f"ambient dimension {choice.ambient_dim}")
    print(f"converged: {choice.converged}")
    print("leading candidates (shift, kind, ambient dimension, bound):")
    for shift, kind, ambient, bound in choice.candidates[:5]:
        label = f"{shift:.17g}" if abs(shift) != float("inf") else ("+inf" if shift > 0 else "-inf")
        print(f"  {label}  {kind}  {ambient}  {bound:.3e}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ritz-bounds",
        description="Ritz values from Lanczos sweeps and rigorous convergence bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config and emit CSV")
    p_run.add_argument("config", help="JSON experiment configuration")
    p_run.set_defaults(func=_cmd_run)

    p_fig = sub.add_parser("figure1", help="one-shot benchmark reproduction preset")
    p_fig.add_argument("--out", default=".", help="output directory (default: .)")
    p_fig.set_defaults(func=_cmd_figure1)

    p_opt = sub.add_parser("optimize-shift", help="search the shift for one target")
    p_opt.add_argument("config", help="JSON experiment configuration (spectrum/overlaps)")
    p_opt.add_argument("--target", type=int, required=True, help="1-based target index")
    p_opt.add_argument("--error", type=float, required=True, help="bound magnitude to reach")
    p_opt.add_argument("--n-cap", type=int, default=None, help="ambient dimension cap")
    p_opt.set_defaults(func=_cmd_optimize_shift)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except RitzBoundsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
