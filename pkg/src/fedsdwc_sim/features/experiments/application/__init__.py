"""Experiment application module."""

from fedsdwc_sim.features.experiments.application.comparison import (
    compare_runs,
    partition_stats,
)
from fedsdwc_sim.features.experiments.application.configuration import (
    OVERRIDE_PATHS,
    apply_arm,
    apply_overrides,
    resolve_config,
)
from fedsdwc_sim.features.experiments.application.pipeline import (
    ExperimentResult,
    build_evaluation_sets,
    build_training_set,
    run_bound_verification,
    run_experiment,
    run_single,
)

__all__ = [
    "OVERRIDE_PATHS",
    "ExperimentResult",
    "apply_arm",
    "apply_overrides",
    "build_evaluation_sets",
    "build_training_set",
    "compare_runs",
    "partition_stats",
    "resolve_config",
    "run_bound_verification",
    "run_experiment",
    "run_single",
]
