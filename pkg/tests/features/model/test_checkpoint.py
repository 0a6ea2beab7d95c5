import pytest
import torch

from fedsdwc_sim.features.model.application.network import init_params
from fedsdwc_sim.features.model.infrastructure import load_checkpoint, save_checkpoint
from fedsdwc_sim.shared.domain.exceptions import ArtifactNotFoundError


def test_checkpoint_restores_every_array(tmp_path, model_config):
    params = init_params(model_config, seed=4)

    restored = load_checkpoint(save_checkpoint(params, tmp_path / "ckpt"))

    assert restored.config == params.config
    assert restored.names() == params.names()
    assert all(torch.equal(restored[name], params[name]) for name in params.names())


def test_missing_checkpoint_is_reported(tmp_path):
    with pytest.raises(ArtifactNotFoundError):
        load_checkpoint(tmp_path)
