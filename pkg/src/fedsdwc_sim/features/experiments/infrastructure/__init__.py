"""Experiment infrastructure: config files and run directory layout."""

from fedsdwc_sim.features.experiments.infrastructure.config_store import (
    RESOLVED_CONFIG,
    load_config,
    parse_config,
    write_resolved_config,
)
from fedsdwc_sim.features.experiments.infrastructure.run_layout import (
    CHECKPOINT_DIR,
    PARTITION_FILE,
    SWEEP_SUMMARY,
    TRAIN_DATA_DIR,
    TRAINING_LOG,
)

__all__ = [
    "CHECKPOINT_DIR",
    "PARTITION_FILE",
    "RESOLVED_CONFIG",
    "SWEEP_SUMMARY",
    "TRAINING_LOG",
    "TRAIN_DATA_DIR",
    "load_config",
    "parse_config",
    "write_resolved_config",
]
