"""Command-line front end.

Every subcommand runs one experiment (``run`` runs the configured battery)
and prints the structured-text report to stdout unless ``--out`` is given.
"""

from __future__ import annotations

import argparse
import sys

from .harness import (
    EXPERIMENTS,
    ConfigError,
    export_report,
    load_config_file,
    make_config,
    run,
    serialize_report,
)

SUBCOMMANDS = {
    "complexity": "plain and prefix time complexity of every prefix of the configured stream",
    "audit-mistakes": "cumulative errors of the Δ_m predictor against l/2^m, m = 0..8",
    "dominance": "eventual containment of randomness-based prediction sets in conformal ones",
    "tightness": "witnesses that the universal level bound cannot be improved",
    "semimeasure-audit": "Kraft sum of the prefix-free language and path sums of 2^-K and the mixture",
    "kolmogorov-sweep": "gap between complexity of constant prefixes and integer complexity",
    "interleaving": "index arithmetic and containment of registry members in the universal system",
    "density": "density of forced systems and containment in their combination",
    "partition": "greedy prefix-free partition against an exhaustive coloring search",
    "sandwich": "measured constants relating universal levels and complexity thresholds",
    "validity": "conformal error counts against the binomial envelope",
}

CSV_HELP = """\
output formats:
  text  report.jsonl, one JSON record per line (header, experiment, row,
        violation, summary); rationals are "num/den" strings
  csv   one <experiment>.csv per experiment with the rows of that experiment;
        audit-mistakes uses the columns m,l,errors,bound (bound = l/2^m)

precedence: built-in defaults, then flags, then the --config file.
exit status: 0 if every asserted inequality held, 1 otherwise, 2 on usage errors.
"""


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file (overrides flags)")
    common.add_argument("--seed", type=_u64, help="64-bit run seed (default 0)")
    common.add_argument("--depth", type=_nonneg, help="longest description searched (default 64)")
    common.add_argument("--budget", type=_nonneg, help="emission budget for time-bounded complexity")
    common.add_argument("--out", metavar="DIR", help="write report files into DIR instead of stdout")
    common.add_argument("--format", choices=("csv", "text"), help="report format (default text)")
    parser = argparse.ArgumentParser(
        prog="unipred", description="Prediction-system experiments with exact arithmetic.",
        epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in SUBCOMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, epilog=CSV_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    sub.add_parser("run", parents=[common], help="run the experiments listed in the config",
                   epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = {"seed": args.seed, "depth": args.depth, "budget": args.budget, "out": args.out, "format": args.format}
    if args.command != "run":
        flags["experiments"] = [args.command]
    try:
        file_values = load_config_file(args.config) if args.config else {}
        cfg = make_config(flags, file_values)
    except ConfigError as exc:
        parser.error(str(exc))
    if args.command != "run" and args.command not in cfg.experiments:
        cfg.experiments.append(args.command)
    report = run(cfg)
    if cfg.out:
        for path in export_report(report, cfg.out, cfg.format):
            print(path)
    elif cfg.format == "csv":
        from .harness import result_csv

        for r in report.results:
            sys.stdout.write(f"# {r.name}\n{result_csv(r)}")
    else:
        sys.stdout.write(serialize_report(report))
    for r in report.results:
        status = "ok" if r.ok else "FAILED"
        print(f"{r.name}: {status} ({r.checks} checks, {len(r.violations)} violations)"
              + (f" error: {r.error}" if r.error else ""), file=sys.stderr)
    return 0 if report.ok else 1


assert set(SUBCOMMANDS) == set(EXPERIMENTS)
