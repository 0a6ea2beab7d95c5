"""argparse subcommands: run, compare, verify-bound, partition-stats."""

import argparse
import sys
from pathlib import Path
from typing import Any

from fedsdwc_sim.features.experiments.application import (
    OVERRIDE_PATHS,
    apply_overrides,
    compare_runs,
    partition_stats,
    run_bound_verification,
    run_experiment,
)
from fedsdwc_sim.features.experiments.domain.entities import ExperimentConfig
from fedsdwc_sim.features.experiments.infrastructure import load_config, parse_config
from fedsdwc_sim.features.model.domain.enums import CausalMode
from fedsdwc_sim.features.theory.infrastructure import bound_table
from fedsdwc_sim.shared.core.logging import get_logger
from fedsdwc_sim.shared.core.settings import get_settings
from fedsdwc_sim.shared.presentation import EXIT_OK

logger = get_logger(__name__)


def _load(path: Path | None) -> ExperimentConfig:
    return load_config(path) if path is not None else parse_config({})


def _print_table(table: Any) -> None:
    sys.stdout.write(table.to_string(index=False) + "\n")


def run_command(args: argparse.Namespace) -> int:
    config = _load(args.config)
    overrides = {OVERRIDE_PATHS[name]: getattr(args, name) for name in OVERRIDE_PATHS}
    config = apply_overrides(config, overrides)
    result = run_experiment(config)
    logger.info("experiment_finished", out=str(result.out), runs=sorted(result.runs))
    return EXIT_OK


def compare_command(args: argparse.Namespace) -> int:
    _print_table(compare_runs(args.run_dirs, csv_path=args.csv))
    return EXIT_OK


def verify_bound_command(args: argparse.Namespace) -> int:
    config = _load(args.config)
    overrides = {
        "seed": args.seed,
        "theory.sigma_grid": args.sigma,
        "theory.prior_gap": args.prior_gap,
        "theory.num_x": args.num_x,
        "theory.dim_v": args.dim_v,
    }
    config = apply_overrides(config, overrides)
    out = args.out or config.out or get_settings().out
    report = run_bound_verification(config.theory, config.seed, out)
    _print_table(bound_table(report))
    return EXIT_OK


def partition_stats_command(args: argparse.Namespace) -> int:
    _print_table(partition_stats(args.run_dir, csv_path=args.csv))
    return EXIT_OK


def _add_run_parser(subparsers: Any) -> None:
    parser = subparsers.add_parser("run", help="Run an experiment or ablation sweep")
    parser.add_argument("--config", type=Path, help="JSON experiment config")
    parser.add_argument("--out", type=Path, help="Output directory")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.add_argument("--rounds", type=int)
    parser.add_argument("--clients", type=int)
    parser.add_argument("--concentration", type=float)
    parser.add_argument("--intervention-scale", dest="intervention_scale", type=float)
    parser.add_argument(
        "--causal-mode", dest="causal_mode", choices=[mode.value for mode in CausalMode]
    )
    parser.add_argument("--local-epochs", dest="local_epochs", type=int)
    parser.add_argument("--batch-size", dest="batch_size", type=int)
    parser.add_argument("--lr", type=float, help="Local SGD learning rate")
    parser.set_defaults(handler=run_command)


def _add_compare_parser(subparsers: Any) -> None:
    parser = subparsers.add_parser("compare", help="Tabulate scores of several runs")
    parser.add_argument("run_dirs", nargs="+", type=Path)
    parser.add_argument("--csv", type=Path, help="Also write the table as CSV")
    parser.set_defaults(handler=compare_command)


def _add_verify_bound_parser(subparsers: Any) -> None:
    parser = subparsers.add_parser("verify-bound", help="Check the OOD bound numerically")
    parser.add_argument("--config", type=Path, help="Config whose theory section is used")
    parser.add_argument("--out", type=Path)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--sigma", type=float, nargs="+", help="Observation noise grid")
    parser.add_argument("--prior-gap", dest="prior_gap", type=float)
    parser.add_argument("--num-x", dest="num_x", type=int)
    parser.add_argument("--dim-v", dest="dim_v", type=int)
    parser.set_defaults(handler=verify_bound_command)


def _add_partition_stats_parser(subparsers: Any) -> None:
    parser = subparsers.add_parser(
        "partition-stats", help="Per-client class histograms of a stored run"
    )
    parser.add_argument("run_dir", type=Path)
    parser.add_argument("--csv", type=Path)
    parser.set_defaults(handler=partition_stats_command)


def register_commands(parser: argparse.ArgumentParser) -> None:
    subparsers = parser.add_subparsers(dest="command", required=True)
    _add_run_parser(subparsers)
    _add_compare_parser(subparsers)
    _add_verify_bound_parser(subparsers)
    _add_partition_stats_parser(subparsers)
