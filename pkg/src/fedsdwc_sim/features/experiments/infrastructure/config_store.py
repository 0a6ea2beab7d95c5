"""Reading and writing experiment config files."""

import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from fedsdwc_sim.features.experiments.domain.entities import ExperimentConfig
from fedsdwc_sim.shared.domain.exceptions import ArtifactNotFoundError, ConfigurationError
from fedsdwc_sim.shared.infrastructure.serialization import read_json, write_json

RESOLVED_CONFIG = "config.resolved.json"


def _field_path(error: Mapping[str, Any]) -> str:
    return ".".join(str(part) for part in error["loc"]) or "config"


def parse_config(payload: Any) -> ExperimentConfig:
    """Validate a decoded document, reporting the first failing field by path."""
    try:
        return ExperimentConfig.model_validate(payload)
    except ValidationError as exc:
        errors = exc.errors()
        first = errors[0]
        message = first["msg"]
        if len(errors) > 1:
            message += f" (and {len(errors) - 1} more)"
        raise ConfigurationError(_field_path(first), message) from exc


def load_config(path: Path) -> ExperimentConfig:
    if not path.is_file():
        raise ArtifactNotFoundError(str(path.parent), path.name)
    try:
        payload = read_json(path)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(str(path), f"not valid JSON ({exc.msg})") from exc
    return parse_config(payload)


def write_resolved_config(config: ExperimentConfig, directory: Path) -> Path:
    return write_json(directory / RESOLVED_CONFIG, config.to_dict())
