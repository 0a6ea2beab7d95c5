"""Experiments presentation layer."""

from fedsdwc_sim.features.experiments.presentation.cli import register_commands

__all__ = ["register_commands"]
