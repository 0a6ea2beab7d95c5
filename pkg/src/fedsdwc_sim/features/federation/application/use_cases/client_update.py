"""Local client training (one participant, one round)."""

import math

import torch

from fedsdwc_sim.features.data.application.augmentation import fourier_augment
from fedsdwc_sim.features.data.domain.entities import LabeledDataset
from fedsdwc_sim.features.federation.domain.entities import ClientResult, FederationConfig
from fedsdwc_sim.features.model.domain.entities import ModelParams
from fedsdwc_sim.features.objective.application.losses import total_loss
from fedsdwc_sim.features.objective.domain.entities import (
    LossBreakdown,
    ObjectiveConfig,
    ObjectiveNoise,
)
from fedsdwc_sim.shared.core.logging import get_logger
from fedsdwc_sim.shared.core.seeding import derive_seed, torch_generator
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError, NumericError

logger = get_logger(__name__)


def iterate_batches(n: int, batch_size: int, seed: int) -> list[torch.Tensor]:
    """Shuffled row indices split into consecutive batches."""
    order = torch.randperm(n, generator=torch_generator(seed))
    return list(torch.split(order, batch_size))


def epoch_seed(round_seed: int, epoch: int) -> int:
    return derive_seed(round_seed, "epoch", epoch)


def step_seed(round_seed: int, epoch: int, step: int) -> int:
    return derive_seed(round_seed, "epoch", epoch, "step", step)


def clip_gradients(params: ModelParams, max_norm: float | None) -> float:
    """Rescale gradients in place to a global norm of at most ``max_norm``.

    Returns the norm before clipping. Non-finite gradients raise instead of
    being written into the parameters.
    """
    tensors = [tensor for tensor in params.parameters() if tensor.grad is not None]
    if not tensors:
        return 0.0
    # an infinite bound reports the norm and leaves the gradients as they are
    norm = torch.nn.utils.clip_grad_norm_(tensors, math.inf if max_norm is None else max_norm)
    if not bool(torch.isfinite(norm)):
        raise NumericError("grad_norm")
    return float(norm)


def local_objective(
    params: ModelParams,
    features: torch.Tensor,
    labels: torch.Tensor,
    seed: int,
    config: FederationConfig,
    objective: ObjectiveConfig,
) -> LossBreakdown:
    """Augment one batch and evaluate the total loss with noise drawn from ``seed``.

    Batches of a single row skip augmentation (no partner to mix with).
    """
    augmented = features
    if config.fourier_mix_ratio > 0 and features.shape[0] >= 2:
        augmented = fourier_augment(
            features, config.fourier_mix_ratio, derive_seed(seed, "fourier")
        )
    noise = ObjectiveNoise.sample(
        features.shape[0],
        params.config,
        torch_generator(derive_seed(seed, "noise")),
        mc_samples=objective.loss_mc_samples,
        dtype=params.dtype,
    )
    return total_loss(
        params,
        augmented,
        labels,
        objective,
        config.intervention_scale,
        noise,
        raw_features=features,
    )


def train_client(
    global_params: ModelParams,
    client_data: LabeledDataset,
    config: FederationConfig,
    round_seed: int,
    objective: ObjectiveConfig | None = None,
    client_id: int = 0,
) -> ClientResult:
    """SGD on a private copy of the broadcast parameters.

    Args:
        global_params: Broadcast parameters; never mutated.
        client_data: The client's shard.
        config: Local epochs, batch size, learning rate and loss knobs.
        round_seed: Seed for shuffling, augmentation and noise of this round.
        objective: Loss estimator settings.
        client_id: Used for logging only.

    Returns:
        Updated parameters with the last step's loss terms.
    """
    if len(client_data) == 0:
        raise InvalidInputError("client_data", "must be nonempty")
    objective = objective or ObjectiveConfig()

    params = global_params.clone().requires_grad_(True)
    optimizer = torch.optim.SGD(params.parameters(), lr=config.learning_rate, momentum=0.0)
    features = torch.as_tensor(client_data.features).to(params.dtype)
    labels = torch.as_tensor(client_data.labels, dtype=torch.long)

    final_loss: dict[str, float] = {}
    steps = 0
    for epoch in range(config.local_epochs):
        order_seed = epoch_seed(round_seed, epoch)
        batches = iterate_batches(len(client_data), config.batch_size, order_seed)
        for step, rows in enumerate(batches):
            breakdown = local_objective(
                params,
                features[rows],
                labels[rows],
                step_seed(round_seed, epoch, step),
                config,
                objective,
            )
            optimizer.zero_grad(set_to_none=True)
            breakdown.total.backward()
            clip_gradients(params, config.max_grad_norm)
            optimizer.step()
            steps += 1
            final_loss = breakdown.to_dict()

    logger.debug("client_update_done", client=client_id, steps=steps, **final_loss)
    return ClientResult(
        client_id=client_id,
        params=params.clone(),
        final_loss=final_loss,
        num_steps=steps,
    )


def client_update(
    global_params: ModelParams,
    client_data: LabeledDataset,
    config: FederationConfig,
    round_seed: int,
    objective: ObjectiveConfig | None = None,
) -> ModelParams:
    """Return the client's locally trained copy of ``global_params``."""
    return train_client(global_params, client_data, config, round_seed, objective).params
