"""Accuracy, MSP scoring and rank-based detection metrics."""

from collections.abc import Sequence

import numpy as np
import torch
from scipy.stats import rankdata

from fedsdwc_sim.features.data.domain.entities import LabeledDataset
from fedsdwc_sim.features.data.domain.enums import DistributionTag
from fedsdwc_sim.features.evaluation.domain.entities import EvaluationConfig
from fedsdwc_sim.features.model.application.network import predict, predict_deterministic
from fedsdwc_sim.features.model.domain.entities import LatentNoise, ModelParams
from fedsdwc_sim.shared.core.seeding import derive_seed, torch_generator
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError


@torch.no_grad()
def predict_dataset(
    params: ModelParams,
    features: np.ndarray | torch.Tensor,
    config: EvaluationConfig | None = None,
    stream: str = "eval",
) -> torch.Tensor:
    """Predictive class probabilities for every row, computed in chunks.

    Zero noise by default; with ``config.monte_carlo`` each chunk draws
    ``mc_samples`` latents from a seed derived from ``(mc_seed, stream, chunk)``.
    """
    config = config or EvaluationConfig()
    x = torch.as_tensor(features).to(params.dtype)
    outputs = []
    for chunk, rows in enumerate(torch.split(torch.arange(x.shape[0]), config.batch_size)):
        batch = x[rows]
        if config.monte_carlo:
            generator = torch_generator(derive_seed(config.mc_seed, stream, chunk))
            noise = LatentNoise.sample(
                (params.config.mc_samples, batch.shape[0]), params.config, generator, params.dtype
            )
            outputs.append(predict(params, batch, noise))
        else:
            outputs.append(predict_deterministic(params, batch))
    if not outputs:
        return torch.empty(0, params.config.num_classes, dtype=params.dtype)
    return torch.cat(outputs)


def accuracy(
    params: ModelParams, ds: LabeledDataset, config: EvaluationConfig | None = None
) -> float:
    """Fraction of rows whose most probable class equals the label."""
    if ds.tag is DistributionTag.ID_S:
        raise InvalidInputError("ds.tag", "semantic-shift sets carry sentinel labels")
    if len(ds) == 0:
        raise InvalidInputError("ds", "must be nonempty")
    probs = predict_dataset(params, ds.features, config)
    predicted = probs.argmax(dim=-1).numpy()
    return float(np.mean(predicted == ds.labels))


def msp_scores(
    params: ModelParams,
    features: np.ndarray | torch.Tensor,
    config: EvaluationConfig | None = None,
    stream: str = "eval",
) -> np.ndarray:
    """Maximum softmax probability of every row."""
    probs = predict_dataset(params, features, config, stream)
    scores: np.ndarray = probs.max(dim=-1).values.to(torch.float64).numpy()
    return scores


def msp_score(
    params: ModelParams, x: np.ndarray | torch.Tensor, config: EvaluationConfig | None = None
) -> float:
    """MSP of a single feature vector."""
    row = torch.as_tensor(x).reshape(1, -1)
    return float(msp_scores(params, row, config)[0])


def _as_scores(name: str, values: Sequence[float] | np.ndarray) -> np.ndarray:
    scores = np.asarray(values, dtype=np.float64).ravel()
    if scores.size == 0:
        raise InvalidInputError(name, "must be nonempty")
    return scores


def auroc(
    id_scores: Sequence[float] | np.ndarray, ood_scores: Sequence[float] | np.ndarray
) -> float:
    """P(random ID score > random OOD score), ties counted one half (Mann-Whitney U)."""
    positives = _as_scores("id_scores", id_scores)
    negatives = _as_scores("ood_scores", ood_scores)
    ranks = rankdata(np.concatenate([positives, negatives]), method="average")
    n_pos, n_neg = positives.size, negatives.size
    u_statistic = ranks[:n_pos].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u_statistic / (n_pos * n_neg))


def fpr_at_tpr(
    id_scores: Sequence[float] | np.ndarray,
    ood_scores: Sequence[float] | np.ndarray,
    tpr_target: float = 0.95,
) -> float:
    """Fraction of OOD scores at or above the largest threshold keeping TPR >= target.

    ID is the positive class and a higher score means more in-distribution.
    """
    positives = _as_scores("id_scores", id_scores)
    negatives = _as_scores("ood_scores", ood_scores)
    if not 0.0 < tpr_target <= 1.0:
        raise InvalidInputError("tpr_target", "must lie in (0, 1]")

    # TPR only changes at ID score values, so the threshold is one of them
    candidates = np.unique(positives)[::-1]
    ascending = np.sort(positives)
    counts = positives.size - np.searchsorted(ascending, candidates, side="left")
    tpr = counts / positives.size
    threshold = candidates[int(np.flatnonzero(tpr >= tpr_target)[0])]
    return float(np.count_nonzero(negatives >= threshold) / negatives.size)
