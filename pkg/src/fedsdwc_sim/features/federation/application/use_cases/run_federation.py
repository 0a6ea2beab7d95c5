"""Server loop: broadcast, local updates, FedAvg and evaluation hooks."""

import time
from collections.abc import Callable, Mapping, Sequence

import numpy as np

from fedsdwc_sim.features.data.domain.entities import LabeledDataset, PartitionSpec
from fedsdwc_sim.features.federation.application.ports import ClientExecutorPort, ClientTask
from fedsdwc_sim.features.federation.application.use_cases.aggregation import fedavg_aggregate
from fedsdwc_sim.features.federation.domain.entities import (
    FederationConfig,
    RoundRecord,
    TrainingLog,
)
from fedsdwc_sim.features.model.application.network import init_params
from fedsdwc_sim.features.model.domain.entities import ModelConfig, ModelParams
from fedsdwc_sim.features.objective.domain.entities import ObjectiveConfig
from fedsdwc_sim.shared.core.logging import get_logger
from fedsdwc_sim.shared.core.seeding import derive_seed
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError

logger = get_logger(__name__)

EvalHook = Callable[[int, ModelParams], Mapping[str, float]]


def client_round_seed(seed: int, round_index: int, client_id: int) -> int:
    """Per-client seed ``hash(seed, round, client)``."""
    return derive_seed(seed, "round", round_index, "client", client_id)


def init_global_params(config: FederationConfig, model_config: ModelConfig) -> ModelParams:
    """Round-zero global parameters."""
    return init_params(model_config, derive_seed(config.seed, "init"))


def sample_participants(num_clients: int, count: int, seed: int) -> list[int]:
    """Uniform sample without replacement, sorted."""
    rng = np.random.default_rng(seed)
    chosen = rng.choice(num_clients, size=count, replace=False)
    return sorted(int(k) for k in chosen)


def run_federation(
    config: FederationConfig,
    model_config: ModelConfig,
    partition: PartitionSpec,
    train_data: LabeledDataset,
    *,
    executor: ClientExecutorPort,
    eval_hooks: Sequence[EvalHook] = (),
    objective: ObjectiveConfig | None = None,
    on_round: Callable[[RoundRecord], None] | None = None,
) -> TrainingLog:
    """Run ``config.rounds`` rounds of federated training.

    Evaluation hooks run every ``config.eval_every`` rounds and after the last
    round; ``on_round`` receives each record as soon as it is complete.
    Local updates run on ``executor``.
    """
    if partition.num_examples != len(train_data):
        raise InvalidInputError("partition", "does not cover the training data")
    if partition.num_clients != config.num_clients:
        raise InvalidInputError(
            "partition", f"has {partition.num_clients} clients, config expects {config.num_clients}"
        )
    objective = objective or ObjectiveConfig()

    shards = [train_data.subset(idx) for idx in partition.client_indices]
    params = init_global_params(config, model_config)
    log = TrainingLog()

    for round_index in range(config.rounds):
        started = time.perf_counter()
        participants = sample_participants(
            config.num_clients,
            config.num_participants,
            derive_seed(config.seed, "participants", round_index),
        )
        tasks = [
            ClientTask(
                client_id=k,
                data=shards[k],
                round_seed=client_round_seed(config.seed, round_index, k),
            )
            for k in participants
        ]
        results = executor.run(params, tasks, config, objective)
        params = fedavg_aggregate(
            [result.params for result in results], partition.client_weights[participants]
        )

        evaluation: dict[str, float] | None = None
        is_last = round_index == config.rounds - 1
        if eval_hooks and ((round_index + 1) % config.eval_every == 0 or is_last):
            evaluation = {}
            for hook in eval_hooks:
                evaluation.update(hook(round_index, params))

        record = RoundRecord(
            round_index=round_index,
            participants=participants,
            client_losses={result.client_id: result.final_loss for result in results},
            wall_time=time.perf_counter() - started,
            evaluation=evaluation,
        )
        log.records.append(record)
        if on_round is not None:
            on_round(record)
        logger.info(
            "round_complete",
            round=round_index,
            participants=len(participants),
            executor=executor.executor_name,
            wall_time=round(record.wall_time, 3),
            **(evaluation or {}),
        )

    log.final_params = params
    return log
