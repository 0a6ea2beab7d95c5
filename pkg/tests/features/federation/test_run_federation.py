import numpy as np
import pytest
import torch

from fedsdwc_sim.features.data.application import dirichlet_partition
from fedsdwc_sim.features.data.domain import PartitionSpec
from fedsdwc_sim.features.federation.application.use_cases import (
    client_round_seed,
    client_update,
    init_global_params,
    run_federation,
    sample_participants,
)
from fedsdwc_sim.features.federation.domain import FederationConfig
from fedsdwc_sim.features.federation.infrastructure.executor_factory import get_client_executor
from fedsdwc_sim.features.federation.infrastructure.executors import (
    SequentialClientExecutor,
    ThreadPoolClientExecutor,
)
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError

SEQUENTIAL = SequentialClientExecutor()


def _config(**overrides: object) -> FederationConfig:
    fields: dict[str, object] = {
        "rounds": 2,
        "local_epochs": 1,
        "batch_size": 32,
        "learning_rate": 0.05,
        "num_clients": 3,
        "seed": 3,
    }
    fields.update(overrides)
    return FederationConfig(**fields)


def _assert_params_equal(left, right) -> None:
    for name in left.names():
        assert torch.equal(left[name], right[name]), name


def test_one_client_reduces_to_centralized_training(model_config, train_set):
    config = _config(num_clients=1, local_epochs=2, batch_size=16)
    partition = PartitionSpec.from_indices([np.arange(len(train_set))], concentration=1.0)

    log = run_federation(config, model_config, partition, train_set, executor=SEQUENTIAL)

    params = init_global_params(config, model_config)
    for round_index in range(config.rounds):
        params = client_update(
            params, train_set, config, client_round_seed(config.seed, round_index, 0)
        )
    _assert_params_equal(log.final_params, params)


def test_zero_rounds_returns_the_initial_parameters(model_config, train_set):
    config = _config(rounds=0)
    partition = dirichlet_partition(train_set.labels, 3, 1.0, seed=0)

    log = run_federation(config, model_config, partition, train_set, executor=SEQUENTIAL)

    assert len(log) == 0
    _assert_params_equal(log.final_params, init_global_params(config, model_config))


def test_partial_participation_samples_distinct_clients(model_config, train_set):
    config = _config(rounds=3, num_clients=10, participation_fraction=0.5)
    partition = dirichlet_partition(train_set.labels, 10, 1.0, seed=1)

    log = run_federation(config, model_config, partition, train_set, executor=SEQUENTIAL)

    for record in log.records:
        assert len(record.participants) == 5
        assert len(set(record.participants)) == 5
        assert set(record.client_losses) == set(record.participants)


def test_participant_sampling_is_seeded():
    assert sample_participants(10, 4, seed=8) == sample_participants(10, 4, seed=8)
    assert sample_participants(5, 5, seed=0) == [0, 1, 2, 3, 4]


def test_hooks_run_every_eval_every_rounds_and_after_the_last(model_config, train_set):
    config = _config(rounds=3, eval_every=2)
    partition = dirichlet_partition(train_set.labels, 3, 1.0, seed=0)
    calls: list[int] = []

    def hook(round_index, params):
        calls.append(round_index)
        return {"marker": float(round_index)}

    log = run_federation(
        config, model_config, partition, train_set, executor=SEQUENTIAL, eval_hooks=[hook]
    )

    assert calls == [1, 2]
    assert [r.evaluation for r in log.records] == [None, {"marker": 1.0}, {"marker": 2.0}]


def test_on_round_receives_each_record(model_config, train_set):
    config = _config(rounds=2)
    partition = dirichlet_partition(train_set.labels, 3, 1.0, seed=0)
    seen = []

    log = run_federation(
        config, model_config, partition, train_set, executor=SEQUENTIAL, on_round=seen.append
    )

    assert seen == log.records
    assert [r.round_index for r in seen] == [0, 1]


def test_thread_pool_matches_sequential_execution(model_config, train_set):
    config = _config(rounds=2)
    partition = dirichlet_partition(train_set.labels, 3, 1.0, seed=2)

    sequential = run_federation(config, model_config, partition, train_set, executor=SEQUENTIAL)
    threaded = run_federation(
        config, model_config, partition, train_set, executor=ThreadPoolClientExecutor(3)
    )

    for name in sequential.final_params.names():
        torch.testing.assert_close(threaded.final_params[name], sequential.final_params[name])


def test_same_seed_gives_identical_runs(model_config, train_set):
    config = _config(rounds=2)
    partition = dirichlet_partition(train_set.labels, 3, 1.0, seed=2)

    first = run_federation(config, model_config, partition, train_set, executor=SEQUENTIAL)
    second = run_federation(config, model_config, partition, train_set, executor=SEQUENTIAL)

    _assert_params_equal(first.final_params, second.final_params)


def test_executor_is_chosen_from_settings(monkeypatch):
    monkeypatch.setenv("FEDSDWC_EXECUTOR", "threads")
    monkeypatch.setenv("FEDSDWC_MAX_WORKERS", "2")

    assert get_client_executor().executor_name == "threads"


def test_partition_must_cover_the_training_data(model_config, train_set):
    partition = PartitionSpec.from_indices([np.arange(10)], concentration=1.0)

    with pytest.raises(InvalidInputError):
        run_federation(
            _config(num_clients=1), model_config, partition, train_set, executor=SEQUENTIAL
        )


def test_partition_client_count_must_match(model_config, train_set):
    partition = dirichlet_partition(train_set.labels, 2, 1.0, seed=0)

    with pytest.raises(InvalidInputError):
        run_federation(
            _config(num_clients=3), model_config, partition, train_set, executor=SEQUENTIAL
        )
