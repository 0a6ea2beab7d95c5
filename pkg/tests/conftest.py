"""Shared fixtures: small configs, datasets and parameters."""

from collections.abc import Iterator

import numpy as np
import pytest
import torch

from fedsdwc_sim.features.data.application import generate_scm_dataset
from fedsdwc_sim.features.data.domain import LabeledDataset, ScmSpec
from fedsdwc_sim.features.federation.infrastructure.executor_factory import get_client_executor
from fedsdwc_sim.features.model.application.network import init_params
from fedsdwc_sim.features.model.domain.entities import ModelConfig, ModelParams
from fedsdwc_sim.features.model.domain.enums import CausalMode
from fedsdwc_sim.shared.core.settings import get_settings


@pytest.fixture(autouse=True)
def _isolated_settings(
    monkeypatch: pytest.MonkeyPatch, tmp_path_factory: pytest.TempPathFactory
) -> Iterator[None]:
    """Fresh settings per test, with artifacts under a temporary root."""
    monkeypatch.setenv("FEDSDWC_OUT", str(tmp_path_factory.mktemp("runs")))
    get_settings.cache_clear()
    get_client_executor.cache_clear()
    yield
    get_settings.cache_clear()
    get_client_executor.cache_clear()


@pytest.fixture
def scm_spec() -> ScmSpec:
    return ScmSpec(dim_c=2, dim_z=2, dim_x=8, num_classes=3)


@pytest.fixture
def model_config() -> ModelConfig:
    return ModelConfig(dim_x=8, dim_s=2, dim_z=2, dim_c=2, num_classes=3, hidden_width=8)


@pytest.fixture
def params(model_config: ModelConfig) -> ModelParams:
    return init_params(model_config, seed=3)


@pytest.fixture
def train_set(scm_spec: ScmSpec) -> LabeledDataset:
    return generate_scm_dataset(scm_spec, 90, seed=11)


def _make_params(
    seed: int = 0,
    causal_mode: CausalMode = CausalMode.WEAK,
    dtype: torch.dtype = torch.float64,
    **overrides: object,
) -> ModelParams:
    """Random parameters for a small network, cast to ``dtype``."""
    fields: dict[str, object] = {
        "dim_x": 8,
        "dim_s": 2,
        "dim_z": 2,
        "dim_c": 2,
        "num_classes": 3,
        "hidden_width": 8,
        "causal_mode": causal_mode,
    }
    fields.update(overrides)
    return init_params(ModelConfig(**fields), seed=seed).to(dtype)


def _random_batch(n: int, dim_x: int = 8, num_classes: int = 3, seed: int = 0):
    rng = np.random.default_rng(seed)
    features = torch.as_tensor(rng.standard_normal((n, dim_x)))
    labels = torch.as_tensor(rng.integers(0, num_classes, size=n), dtype=torch.long)
    return features, labels


@pytest.fixture
def make_params():
    return _make_params


@pytest.fixture
def random_batch():
    return _random_batch
