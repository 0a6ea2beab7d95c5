"""Command-line application for the FedSDWC simulator."""

import argparse
from collections.abc import Sequence

import torch

from fedsdwc_sim import __version__
from fedsdwc_sim.features.experiments.presentation import register_commands
from fedsdwc_sim.shared.core.logging import configure_logging
from fedsdwc_sim.shared.core.settings import get_settings
from fedsdwc_sim.shared.presentation import handle_exception


def create_app() -> argparse.ArgumentParser:
    """Create the argument parser with every subcommand registered."""
    parser = argparse.ArgumentParser(
        prog="fedsdwc",
        description="Federated causal-representation simulator with OOD evaluation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    register_commands(parser)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, execute the chosen command and return its exit status."""
    settings = get_settings()
    configure_logging(settings)
    torch.set_num_threads(settings.num_threads)

    args = create_app().parse_args(argv)
    try:
        status: int = args.handler(args)
    except Exception as exc:
        return handle_exception(exc)
    return status
