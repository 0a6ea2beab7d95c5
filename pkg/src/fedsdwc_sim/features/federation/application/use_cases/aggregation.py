"""FedAvg weighted aggregation."""

from collections.abc import Sequence

import numpy as np
import torch

from fedsdwc_sim.features.model.domain.entities import ModelParams
from fedsdwc_sim.shared.domain.exceptions import AggregationError, InvalidInputError


def _check_compatible(client_params: Sequence[ModelParams]) -> None:
    reference = client_params[0]
    names = set(reference.arrays)
    for other in client_params[1:]:
        other_names = set(other.arrays)
        if other_names != names:
            offending = sorted(names ^ other_names)[0]
            raise AggregationError(offending, "parameter name sets differ")
        for name in reference.names():
            if other[name].shape != reference[name].shape:
                raise AggregationError(
                    name, f"shape {tuple(other[name].shape)} != {tuple(reference[name].shape)}"
                )


def fedavg_aggregate(
    client_params: Sequence[ModelParams], weights: Sequence[float] | np.ndarray
) -> ModelParams:
    """Weighted elementwise average with weights renormalized to sum to one.

    Accumulation runs in float64 and is cast back to the parameter dtype.
    """
    if not client_params:
        raise InvalidInputError("client_params", "need at least one client")
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (len(client_params),):
        raise InvalidInputError("weights", "need one weight per client")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise InvalidInputError("weights", "must be finite and nonnegative")
    if w.sum() == 0:
        raise InvalidInputError("weights", "all weights are zero")
    _check_compatible(client_params)
    w = w / w.sum()

    reference = client_params[0]
    arrays: dict[str, torch.Tensor] = {}
    for name in reference.names():
        acc = torch.zeros_like(reference[name], dtype=torch.float64)
        for weight, params in zip(w, client_params, strict=True):
            acc += float(weight) * params[name].detach().to(torch.float64)
        arrays[name] = acc.to(reference[name].dtype)
    return ModelParams(arrays=arrays, config=reference.config)
