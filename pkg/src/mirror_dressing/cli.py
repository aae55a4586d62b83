"""Command-line front end.

    mirror-dressing run --config FILE [--set k=v ...] --output FILE [--format csv|jsonl]
    mirror-dressing validate --config FILE [--set k=v ...]
    mirror-dressing oracle --config FILE [--set k=v ...] [--output FILE]

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 a built-in identity check failed (output is still written), 5 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import __version__
from .config import ConfigError, parse_config
from .oracle import OracleError
from .output import write_table
from .quadrature import QuadratureError
from .runner import run_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IDENTITY = 4
EXIT_IO = 5

log = logging.getLogger("mirror_dressing")


def _load(args, scenario=None):
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError([f"config: cannot read {args.config}: {exc.strerror}"]) from exc
    overrides = list(args.set or [])
    if scenario is not None:
        overrides.append(f"scenario = {scenario}")
    return parse_config(text, overrides)


def _execute(cfg, output, fmt, figure=None, timing=False):
    start = time.perf_counter()
    table = run_scenario(cfg)
    elapsed = time.perf_counter() - start
    if timing:
        table.info["wall_clock_s"] = f"{elapsed:.3f}"
    log.info("scenario %s finished in %.3f s", cfg.scenario, elapsed)
    write_table(table, output, fmt)
    if figure:
        from .plotting import render_figure

        render_figure(table, figure)
    if table.failures:
        for failure in table.failures:
            print(f"identity check failed: {failure}", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def cmd_run(args):
    cfg = _load(args)
    output = args.output or cfg.output
    if output is None:
        raise ConfigError(["output: no --output given and no 'output' key in the config"])
    return _execute(cfg, output, args.format or cfg.format, args.figure, args.timing)


def cmd_validate(args):
    cfg = _load(args)
    sys.stdout.write(cfg.to_text())
    return EXIT_OK


def cmd_oracle(args):
    cfg = _load(args, scenario="oracle-validate")
    return _execute(cfg, args.output or "-", args.format or cfg.format, args.figure, args.timing)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirror-dressing",
        description="Dressing energies of a quantum movable mirror in a 1D scalar-field cavity.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="key = value scenario file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key (repeatable)")

    def outputs(p, required):
        p.add_argument("--output", required=required, help="output file, '-' for stdout")
        p.add_argument("--format", choices=("csv", "jsonl"))
        p.add_argument("--figure", help="also render a matplotlib figure to this file")
        p.add_argument("--timing", action="store_true", help="record wall-clock time in the header")

    run = sub.add_parser("run", help="run the configured scenario")
    common(run)
    outputs(run, required=False)
    run.set_defaults(func=cmd_run)

    validate = sub.add_parser("validate", help="parse and validate a config only")
    common(validate)
    validate.set_defaults(func=cmd_validate)

    oracle = sub.add_parser("oracle", help="compare perturbation theory with exact diagonalisation")
    common(oracle)
    outputs(oracle, required=False)
    oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, OracleError, ValueError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
