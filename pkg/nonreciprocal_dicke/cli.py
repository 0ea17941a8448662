# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
"""
Command line front end::

    nonreciprocal-dicke <command> [--config FILE] [--set block.key=value ...] [-v]
                        [--out DIR] [--format csv|json] [--plot] [--threads N]
                        [--seed N] [--variant NAME] [--print-config] [command options]

Exit codes: 0 on success, 1 for usage and configuration errors, 2 when a
computation failed (the manifest in the output directory lists what was
written before the failure).
"""
import argparse
import json
import logging
import sys
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

from . import Subcommand
from .config import RunConfig
from .config import load_config
from .config import parse_config
from .config import resolved
from .dispatcher import EXIT_OK
from .dispatcher import EXIT_USAGE
from .exceptions import ConfigError

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(message)


def _common_options() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="BLOCK.KEY=VALUE",
        help="override one configuration value (JSON literal)",
    )
    common.add_argument("--out", help="output directory")
    common.add_argument(
        "--format", choices=("csv", "json"), help="format of grids and series"
    )
    common.add_argument("--plot", action="store_true", help="also write plot scripts")
    common.add_argument("--threads", type=int, help="worker processes")
    common.add_argument("--seed", type=int, help="global seed")
    common.add_argument(
        "--variant",
        choices=("full", "adiabatic", "reduced_plus"),
        help="model variant",
    )
    common.add_argument(
        "--print-config",
        action="store_true",
        help="print the resolved configuration and exit",
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="more logging (repeatable)"
    )
    return common


def _add_command_options(name: str, parser: argparse.ArgumentParser) -> None:
    if name in ("np-spectrum", "ep-scan"):
        parser.add_argument(
            "--sweep",
            nargs=4,
            metavar=("PARAM", "MIN", "MAX", "COUNT"),
            help="phi sweep",
        )
    elif name == "phase-diagram":
        parser.add_argument(
            "--axes",
            nargs=8,
            metavar=("P1", "MIN1", "MAX1", "N1", "P2", "MIN2", "MAX2", "N2"),
            help="the two sweep axes",
        )
    elif name == "lambda-scan":
        parser.add_argument(
            "--lambdas", nargs=3, metavar=("MIN", "MAX", "COUNT"), help="coupling scan"
        )
    elif name == "spectrum":
        parser.add_argument(
            "--observable", action="append", help="observable to transform (repeatable)"
        )
    elif name == "census":
        parser.add_argument("--n-ic", type=int, help="number of initial conditions")
    elif name == "consistency":
        parser.add_argument(
            "--samples", type=int, help="random states for the identity check"
        )


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(
        prog="nonreciprocal-dicke",
        description=(
            "Simulation and bifurcation analysis of the non-reciprocal Dicke model."
        ),
    )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True
    for name in sorted(Subcommand.HANDLERS):
        sub = commands.add_parser(name, help=Subcommand.summary(name), parents=[common])
        _add_command_options(name, sub)
    return parser


def _number(text: str, where: str) -> float:
    try:
        return float(text)
    except ValueError as ex:
        raise ConfigError(f"expected a number, got {text!r}", field=where) from ex


def _count(text: str, where: str) -> int:
    try:
        return int(text)
    except ValueError as ex:
        raise ConfigError(f"expected an integer, got {text!r}", field=where) from ex


def _range(low: str, high: str, count: str, where: str) -> List[Any]:
    return [_number(low, where), _number(high, where), _count(count, where)]


def command_overrides(args: argparse.Namespace) -> List[str]:
    """Translate command line flags into configuration overrides."""
    overrides: List[str] = []

    def put(path: str, value: Any) -> None:
        overrides.append(f"{path}={json.dumps(value)}")

    if args.out is not None:
        put("output.path", args.out)
    if args.format is not None:
        put("output.format", args.format)
    if args.threads is not None:
        put("sweep.threads", args.threads)
        put("census.threads", args.threads)
    if args.seed is not None:
        put("seed", args.seed)
    if args.variant is not None:
        put("variant", args.variant)
    if getattr(args, "sweep", None):
        param, low, high, count = args.sweep
        if param != "phi":
            raise ConfigError(f"only phi can be swept, got {param!r}", field="--sweep")
        put("experiment.phi_sweep", _range(low, high, count, "--sweep"))
    if getattr(args, "axes", None):
        values = args.axes
        put(
            "experiment.axes",
            [
                [values[offset]] + _range(*values[offset + 1 : offset + 4], "--axes")
                for offset in (0, 4)
            ],
        )
    if getattr(args, "lambdas", None):
        low, high, count = args.lambdas
        put("experiment.lambdas", _range(low, high, count, "--lambdas"))
    if getattr(args, "observable", None):
        put("experiment.observables", args.observable)
    if getattr(args, "n_ic", None) is not None:
        put("census.initial_conditions", args.n_ic)
    return overrides


def resolve(args: argparse.Namespace) -> RunConfig:
    overrides = list(args.overrides) + command_overrides(args)
    if args.config:
        return load_config(args.config, overrides)
    return parse_config("", overrides)


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        cfg = resolve(args)
    except ConfigError as ex:
        print(f"nonreciprocal-dicke: {ex}", file=sys.stderr)
        return EXIT_USAGE
    if args.print_config:
        print(json.dumps(resolved(cfg), indent=2, sort_keys=True))
        return EXIT_OK
    options: Dict[str, Any] = {"samples": getattr(args, "samples", None)}
    return Subcommand.dispatch(
        args.command, cfg, plot=args.plot, options=options, log=logger
    )


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
