"""Checkpoint directory: one raw float32 file per array plus manifest.json."""

from pathlib import Path

import numpy as np
import torch

from fedsdwc_sim.features.model.domain.entities import ModelConfig, ModelParams
from fedsdwc_sim.shared.domain.exceptions import ArtifactNotFoundError
from fedsdwc_sim.shared.infrastructure.serialization import read_json, write_json

MANIFEST_FILE = "manifest.json"


def save_checkpoint(params: ModelParams, directory: Path) -> Path:
    """Write every named array as little-endian float32."""
    directory.mkdir(parents=True, exist_ok=True)
    arrays: dict[str, dict[str, object]] = {}
    for name in params.names():
        tensor = params[name].detach().to(torch.float32).cpu()
        file_name = f"{name}.f32"
        tensor.numpy().astype("<f4").tofile(directory / file_name)
        arrays[name] = {"shape": list(tensor.shape), "file": file_name}
    write_json(
        directory / MANIFEST_FILE,
        {"config": params.config.model_dump(mode="json"), "arrays": arrays},
    )
    return directory


def load_checkpoint(directory: Path) -> ModelParams:
    """Read a checkpoint written by :func:`save_checkpoint` (bit-exact)."""
    manifest_path = directory / MANIFEST_FILE
    if not manifest_path.exists():
        raise ArtifactNotFoundError(str(directory), MANIFEST_FILE)
    manifest = read_json(manifest_path)
    arrays = {
        name: torch.from_numpy(
            np.fromfile(directory / entry["file"], dtype="<f4")
            .astype(np.float32)
            .reshape(entry["shape"])
        )
        for name, entry in manifest["arrays"].items()
    }
    return ModelParams(arrays=arrays, config=ModelConfig.model_validate(manifest["config"]))
