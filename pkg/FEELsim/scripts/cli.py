#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
cli.py - feelsim command line

    feelsim run --config presets/mnist_6_2.json --out out/mnist_6_2
    feelsim aggregate out/run_a out/run_b --out out/aggregate.csv
    feelsim schedule-bench instance.txt
    feelsim gen-synthetic --out data/synthetic

Exit codes : 0 success, 1 invalid input or arguments, 2 I/O error, 3 internal error.
"""
# --- standard Python modules ---
import argparse
import sys

# --- 3rd party modules ---
from colorama import Fore, Style, init as colorama_init

# --- this application's modules ---
from ..core.io.Config import load_config, SimulationConfig, SyntheticConfig
from ..core.io.IOExceptions import (
    ConfigParseError,
    ConfigValidationError,
    EmptyDatasetError,
    IDXFormatError,
    InstanceParseError,
    InstanceTooLargeError,
    InsufficientDataError,
    InvalidAttackError,
    SchemaMismatchError,
)
from ..core.functions.Scheduler import (
    read_instance,
    greedy_schedule,
    exact_schedule,
    objective_ratio,
)
from ..core.data.Dataset import generate_synthetic
from ..core.data.IDX import write_dataset_idx
from ..core.utils.notes import update_log_level
from ..core.utils.rng import derive_stream
from ..db.metrics import save_aggregate, AGGREGATE_FILE
from ..infos import __version__ as version
from .Simulator import run_simulation

# ------------------------------------------------------------------------------

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_INTERNAL = 3

INVALID_INPUT = (
    ConfigParseError,
    ConfigValidationError,
    EmptyDatasetError,
    IDXFormatError,
    InstanceParseError,
    InstanceTooLargeError,
    InsufficientDataError,
    InvalidAttackError,
    SchemaMismatchError,
)
LOG_LEVELS = ("default", "silence", "debug", "info", "warning", "error", "critical")


def _line(key, value):
    return "{}{:<32}{}{}".format(Fore.CYAN, key, Style.RESET_ALL, value)


def _format(value):
    if isinstance(value, float):
        return "{:.4f}".format(value)
    return "{}".format(value)


def cmd_run(args):
    config = load_config(args.config)
    if args.seed is not None:
        config = config.with_overrides(seed=args.seed)
    simulations = run_simulation(config, out=args.out)
    for simulation in simulations:
        print(Fore.YELLOW + "=" * 60 + Style.RESET_ALL)
        for key, value in simulation.summary().items():
            print(_line(key, _format(value)))
    if args.out:
        print(_line("output", args.out))
    return EXIT_OK


def cmd_aggregate(args):
    out = args.out or AGGREGATE_FILE
    aggregated = save_aggregate(args.run_dirs, out)
    columns = [c for c in ("global_acc_mean", "global_acc_std") if c in aggregated]
    print(aggregated[columns].to_string())
    print(_line("runs", len(args.run_dirs)))
    print(_line("output", out))
    return EXIT_OK


def cmd_schedule_bench(args):
    instance = read_instance(args.instance, min_selected_N=args.min_selected)
    greedy = greedy_schedule(instance)
    exact = exact_schedule(instance)
    print(_line("UEs", len(instance)))
    print(_line("feasible UEs", len(instance.feasible_positions())))
    print(_line("greedy selection", list(greedy.selected)))
    print(_line("greedy objective", _format(greedy.objective)))
    print(_line("exact selection", list(exact.selected)))
    print(_line("exact objective", _format(exact.objective)))
    print(_line("ratio", _format(objective_ratio(greedy, exact))))
    return EXIT_OK


def cmd_gen_synthetic(args):
    defaults = SyntheticConfig()
    synthetic = SyntheticConfig(
        num_classes=args.classes if args.classes is not None else defaults.num_classes,
        per_class=args.per_class if args.per_class is not None else defaults.per_class,
        dim=args.dim if args.dim is not None else defaults.dim,
        separation=args.separation if args.separation is not None else defaults.separation,
    )
    synthetic.validate()
    if synthetic.num_classes > 10:
        raise ConfigValidationError("gen-synthetic writes at most 10 classes (IDX loader)")
    dataset = generate_synthetic(
        synthetic.num_classes,
        synthetic.per_class,
        synthetic.dim,
        derive_stream(args.seed, "synthetic"),
        separation=synthetic.separation,
    )
    paths = write_dataset_idx(dataset, args.out, "train", compress=not args.no_gzip)
    for path in paths:
        print(_line("written", path))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="feelsim",
        description="Data-quality based scheduling for federated edge learning",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + version)
    parser.add_argument(
        "--log-level", choices=LOG_LEVELS, default="default", help="verbosity"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a simulation from a JSON config")
    run.add_argument("--config", required=True, help="JSON configuration file")
    run.add_argument("--seed", type=int, default=None, help="override the config seed")
    run.add_argument("--out", default=None, help="directory for CSV and JSON results")
    run.set_defaults(handler=cmd_run)

    aggregate = sub.add_parser("aggregate", help="average several run directories")
    aggregate.add_argument("run_dirs", nargs="+")
    aggregate.add_argument("--out", default=None, help="aggregate CSV file")
    aggregate.set_defaults(handler=cmd_aggregate)

    bench = sub.add_parser("schedule-bench", help="greedy vs exact on an instance file")
    bench.add_argument("instance", help="one UE per line : id, V, min_alpha")
    bench.add_argument("--min-selected", type=int, default=0)
    bench.set_defaults(handler=cmd_schedule_bench)

    synthetic = sub.add_parser("gen-synthetic", help="write a synthetic dataset as IDX files")
    synthetic.add_argument("--out", required=True, help="data directory")
    synthetic.add_argument("--seed", type=int, default=0)
    synthetic.add_argument("--classes", type=int, default=None)
    synthetic.add_argument("--per-class", type=int, default=None)
    synthetic.add_argument("--dim", type=int, default=None)
    synthetic.add_argument("--separation", type=float, default=None)
    synthetic.add_argument("--no-gzip", action="store_true")
    synthetic.set_defaults(handler=cmd_gen_synthetic)
    return parser


def main(argv=None):
    colorama_init()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        # argparse exits 2 on usage errors, 0 for --help and --version
        return EXIT_OK if stop.code in (0, None) else EXIT_INVALID
    if args.log_level != "default":
        update_log_level(args.log_level, log_this=False)
    try:
        return args.handler(args)
    except INVALID_INPUT as error:
        print("{}error : {}{}".format(Fore.RED, error, Style.RESET_ALL), file=sys.stderr)
        return EXIT_INVALID
    except OSError as error:
        print("{}I/O error : {}{}".format(Fore.RED, error, Style.RESET_ALL), file=sys.stderr)
        return EXIT_IO
    except Exception as error:
        print(
            "{}internal error : {!r}{}".format(Fore.RED, error, Style.RESET_ALL),
            file=sys.stderr,
        )
        return EXIT_INTERNAL
