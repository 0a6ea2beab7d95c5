"""Core configuration module."""

from fedsdwc_sim.shared.core.logging import configure_logging, get_logger
from fedsdwc_sim.shared.core.seeding import derive_seed, numpy_rng, torch_generator
from fedsdwc_sim.shared.core.settings import Settings, get_settings

__all__ = [
    "Settings",
    "configure_logging",
    "derive_seed",
    "get_logger",
    "get_settings",
    "numpy_rng",
    "torch_generator",
]
