"""A tiny end-to-end experiment that finishes in a few seconds."""

import copy
from typing import Any

import pytest

SMALL_PAYLOAD: dict[str, Any] = {
    "seed": 5,
    "data": {
        "scm": {"dim_c": 2, "dim_z": 2, "dim_x": 8, "num_classes": 3},
        "num_train": 60,
        "concentration": 1.0,
    },
    "model": {
        "dim_x": 8,
        "dim_s": 2,
        "dim_z": 2,
        "dim_c": 2,
        "num_classes": 3,
        "hidden_width": 8,
    },
    "federation": {
        "rounds": 2,
        "local_epochs": 1,
        "batch_size": 16,
        "learning_rate": 0.05,
        "num_clients": 3,
    },
    "evaluation": {
        "num_test": 30,
        "num_ood": 20,
        "corruptions": [{"kind": "gaussian_noise", "severity": 2}],
        "style_shifts": [1.5],
        "track_rounds": True,
    },
    "theory": {"sigma_grid": [0.01, 0.1], "num_x": 500},
}


def _small_payload(**sections: Any) -> dict[str, Any]:
    """Deep copy of the tiny experiment with top-level keys or sections replaced."""
    payload = copy.deepcopy(SMALL_PAYLOAD)
    for key, value in sections.items():
        if isinstance(value, dict) and isinstance(payload.get(key), dict):
            payload[key] = {**payload[key], **value}
        else:
            payload[key] = value
    return payload


@pytest.fixture
def small_payload():
    return _small_payload
