"""Config overrides and resolution."""

from collections.abc import Mapping
from pathlib import Path
from typing import Any

from fedsdwc_sim.features.experiments.domain.entities import ExperimentConfig, SweepArm
from fedsdwc_sim.features.experiments.infrastructure.config_store import parse_config
from fedsdwc_sim.shared.core.seeding import derive_seed
from fedsdwc_sim.shared.core.settings import Settings, get_settings

# CLI flag destination -> dotted config path
OVERRIDE_PATHS = {
    "seed": "seed",
    "out": "out",
    "rounds": "federation.rounds",
    "clients": "federation.num_clients",
    "concentration": "data.concentration",
    "intervention_scale": "federation.intervention_scale",
    "causal_mode": "model.causal_mode",
    "local_epochs": "federation.local_epochs",
    "batch_size": "federation.batch_size",
    "lr": "federation.learning_rate",
}


def _set_path(payload: dict[str, Any], dotted: str, value: Any) -> None:
    *parents, leaf = dotted.split(".")
    node = payload
    for key in parents:
        node = node.setdefault(key, {})
    node[leaf] = value


def apply_overrides(config: ExperimentConfig, overrides: Mapping[str, Any]) -> ExperimentConfig:
    """Return a revalidated copy with dotted-path overrides; None values are skipped."""
    payload = config.to_dict()
    for path, value in overrides.items():
        if value is None:
            continue
        _set_path(payload, path, str(value) if isinstance(value, Path) else value)
    return parse_config(payload)


def apply_arm(config: ExperimentConfig, arm: SweepArm, seed: int, out: Path) -> ExperimentConfig:
    """Config for one (arm, seed) cell of a sweep; the copy carries no sweep itself."""
    payload = config.to_dict()
    payload["sweep"] = {"arms": [], "seeds": []}
    payload["theory"] = {**payload["theory"], "enabled": False}
    overrides: dict[str, Any] = {
        "seed": seed,
        "out": str(out),
        "arm": arm.name,
        "model.causal_mode": arm.causal_mode.value if arm.causal_mode else None,
        "federation.intervention_scale": arm.intervention_scale,
        "data.concentration": arm.concentration,
    }
    for path, value in overrides.items():
        if value is not None:
            _set_path(payload, path, value)
    return parse_config(payload)


def resolve_config(config: ExperimentConfig, settings: Settings | None = None) -> ExperimentConfig:
    """Materialize the output directory and the derived federation seed."""
    settings = settings or get_settings()
    return apply_overrides(
        config,
        {
            "out": config.out if config.out is not None else settings.out,
            "federation.seed": derive_seed(config.seed, "federation"),
        },
    )
