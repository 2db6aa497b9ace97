"""
Command line front end.

    evostab run --mutation 0 --crossover 0 --seed 7
    evostab ensemble --config experiment.yaml --runs 200
    evostab sweep --runs 200 --mutation-grid 0:1:0.1 --crossover-grid 0:1:0.1
    evostab visualize --snapshot results/run-.../population_1000.txt
    evostab markov --matrix m.csv --invariant

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

import argparse
import logging
import sys
from typing import List, Optional

import numpy as np

from .evolution import EvolutionException
from .macrostate import MacroStateException
from .manager import FULL_RUNS, ConfigurationException, ExperimentConfig, ExperimentException, ExperimentManager, OutputException
from .manager.config import from_mapping, load_config
from .manager.runner import parse_grid
from .markov import (
    Measure,
    MarkovChainException,
    classify,
    equilibrium_limit,
    invariant_distribution,
    load_matrix,
    load_measure,
    n_step,
    propagate,
)
from .version import __version__

logger = logging.getLogger("evostab")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

OVERRIDES = {
    "seed": "master_seed",
    "runs": "runs",
    "generations": "generations",
    "mutation": "mutation_rate",
    "crossover": "crossover_rate",
    "workers": "workers",
    "partition": "partition",
}


class UsageException(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Argument errors become validation failures instead of argparse's own exit status"""

    def error(self, message):
        raise UsageException(message)


def _experiment_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="flat YAML config file")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--runs", type=int, help="runs per ensemble")
    parser.add_argument("--full-runs", action="store_true", help=f"use {FULL_RUNS} runs per ensemble")
    parser.add_argument("--generations", type=int, help="generation horizon")
    parser.add_argument("--mutation", type=float, help="mutation rate in [0, 1]")
    parser.add_argument("--crossover", type=float, help="crossover rate in [0, 1]")
    parser.add_argument("--workers", type=int, help="worker processes for ensembles")
    parser.add_argument("--partition", choices=["deviation", "banded"], help="macro-state partition")
    parser.add_argument("--checkpoints", help="comma-separated generations to snapshot")
    parser.add_argument("--out-dir", default="results", help="output root directory")
    parser.add_argument("--name", help="experiment subdirectory name")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="evostab", description="Evolving agent population stability experiments")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    run = commands.add_parser("run", help="single run with fitness curves")
    _experiment_arguments(run)
    run.add_argument("--run-index", type=int, default=0)

    ensemble = commands.add_parser("ensemble", help="macro-state occupation probabilities over an ensemble")
    _experiment_arguments(ensemble)

    sweep = commands.add_parser("sweep", help="degree of instability over mutation x crossover rates")
    _experiment_arguments(sweep)
    sweep.add_argument("--mutation-grid", default="0:1:0.1", help="start:stop:step or comma list")
    sweep.add_argument("--crossover-grid", default="0:1:0.1", help="start:stop:step or comma list")

    visualize = commands.add_parser("visualize", help="population pixmap")
    _experiment_arguments(visualize)
    visualize.add_argument("--snapshot", help="population snapshot to draw instead of running")
    visualize.add_argument("--cell", type=int, default=1, help="pixels per attribute cell")

    markov = commands.add_parser("markov", help="Markov chain kernel on a CSV matrix")
    markov.add_argument("--matrix", required=True, help="CSV transition matrix with a header row of labels")
    markov.add_argument("--measure", help="CSV starting distribution")
    markov.add_argument("--invariant", action="store_true", help="print the invariant distribution")
    markov.add_argument("--classify", action="store_true", help="print irreducibility and periods")
    markov.add_argument("--steps", type=int, help="print P^t")
    markov.add_argument("--propagate", action="store_true", help="print one step of the measure")
    markov.add_argument("--limit", action="store_true", help="iterate the measure to equilibrium")
    markov.add_argument("--tol", type=float, default=1e-12)
    markov.add_argument("--horizon", type=int, default=100000)

    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Defaults, then the config file, then flag overrides"""
    config = load_config(args.config) if args.config else ExperimentConfig()

    overrides = {key: getattr(args, flag) for flag, key in OVERRIDES.items() if getattr(args, flag, None) is not None}
    if args.full_runs:
        overrides["runs"] = FULL_RUNS
    if args.checkpoints:
        try:
            overrides["checkpoints"] = [int(value) for value in args.checkpoints.split(",")]
        except ValueError:
            raise ConfigurationException(f"invalid value {args.checkpoints!r}", "checkpoints") from None
    return from_mapping(overrides, config)


def _vector(values) -> str:
    return "(" + ", ".join(f"{value:.4f}" for value in values) + ")"


def markov_command(args: argparse.Namespace, out) -> int:
    matrix = load_matrix(args.matrix)
    measure = load_measure(args.measure) if args.measure else Measure.uniform(matrix.n)

    if args.invariant:
        print(_vector(invariant_distribution(matrix, args.tol).weights), file=out)
    if args.classify:
        classification = classify(matrix)
        print(f"irreducible={classification.irreducible} aperiodic={classification.aperiodic} periods={list(classification.period_per_state)}", file=out)
    if args.steps is not None:
        power = n_step(matrix, args.steps)
        for row in power.entries:
            print(",".join(f"{value:.6g}" for value in row), file=out)
    if args.propagate:
        print(_vector(propagate(measure, matrix).weights), file=out)
    if args.limit:
        limit, converged = equilibrium_limit(measure, matrix, args.tol, args.horizon)
        print(f"{_vector(limit.weights)} converged={converged}", file=out)
    return EXIT_OK


def experiment_command(args: argparse.Namespace, out) -> int:
    config = resolve_config(args)
    manager = ExperimentManager(args.out_dir)

    if args.command == "run":
        trajectory = manager.run(config, args.run_index, args.name)
        final = trajectory.records[-1]
        print(f"generation={final.generation} max_fitness={final.max_fitness:.4f} mean_fitness={final.mean_fitness:.4f} label={final.label}", file=out)
    elif args.command == "ensemble":
        _, summary = manager.ensemble(config, args.name)
        print(f"p_max={summary.p_max:.4f} delta={summary.delta:.4f} N={summary.n} stable={summary.verdict.stable}", file=out)
    elif args.command == "sweep":
        result = manager.sweep(config, parse_grid(args.mutation_grid), parse_grid(args.crossover_grid), args.name)
        np.savetxt(out, result.deltas(), fmt="%.4f", delimiter=",")
    else:
        if args.cell < 1:
            raise ConfigurationException(f"must be at least 1, got {args.cell}", "cell")
        print(manager.visualize(config, args.snapshot, args.cell, args.name), file=out)
    return EXIT_OK


def dispatch(argv: Optional[List[str]] = None, out=None) -> int:
    """
    Parse arguments and run the selected command

    Args:
        argv: arguments, defaults to sys.argv[1:]
        out: data stream, defaults to stdout

    Returns:
        exit status
    """
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageException as e:
        print(f"evostab: {e}", file=sys.stderr)
        return EXIT_VALIDATION

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        if args.command == "markov":
            return markov_command(args, out)
        return experiment_command(args, out)
    except (OutputException, OSError) as e:
        logger.error("%s", e)
        return EXIT_IO
    except (ExperimentException, EvolutionException, MacroStateException, MarkovChainException, ValueError) as e:
        logger.error("%s", e)
        return EXIT_VALIDATION


def main():
    sys.exit(dispatch())
