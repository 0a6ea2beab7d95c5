"""Dirichlet label-skew partitioning across clients."""

import numpy as np

from fedsdwc_sim.features.data.domain.entities import PartitionSpec
from fedsdwc_sim.shared.core.logging import get_logger
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError, PartitionError

logger = get_logger(__name__)


def dirichlet_partition(
    labels: np.ndarray,
    num_clients: int,
    concentration: float,
    seed: int = 0,
) -> PartitionSpec:
    """Split example indices across clients with Dirichlet class proportions.

    Each client draws ``q_k ~ Dir(concentration * p)`` with ``p`` uniform over
    classes. The shuffled indices of class ``j`` are cut at the cumulative
    shares ``q_k[j] / sum_k q_k[j]``. Clients left empty take one example at a
    time from the currently largest client.

    Args:
        labels: Integer label vector of the parent dataset.
        num_clients: Number of clients K.
        concentration: Dirichlet concentration; smaller means more skew.
        seed: Seed for proportions and shuffling.

    Returns:
        Partition with disjoint, covering shards and size-proportional weights.
    """
    labels = np.asarray(labels)
    if num_clients < 1:
        raise InvalidInputError("num_clients", "must be >= 1")
    if not concentration > 0:
        raise InvalidInputError("concentration", "must be > 0")
    if labels.ndim != 1 or labels.size == 0:
        raise InvalidInputError("labels", "expected a nonempty vector")
    if labels.min() < 0:
        raise InvalidInputError("labels", "negative labels cannot be partitioned")

    num_classes = int(labels.max()) + 1
    counts = np.bincount(labels, minlength=num_classes)
    empty = np.flatnonzero(counts == 0)
    if empty.size:
        raise InvalidInputError("labels", f"class {int(empty[0])} has zero examples")

    rng = np.random.default_rng(seed)
    alpha = np.full(num_classes, concentration / num_classes)
    proportions = rng.dirichlet(alpha, size=num_clients)

    shards: list[list[np.ndarray]] = [[] for _ in range(num_clients)]
    for j in range(num_classes):
        idx = rng.permutation(np.flatnonzero(labels == j))
        column = proportions[:, j]
        total = column.sum()
        share = column / total if total > 0 else np.full(num_clients, 1.0 / num_clients)
        cuts = (np.cumsum(share) * len(idx)).astype(np.int64)[:-1]
        for k, piece in enumerate(np.split(idx, cuts)):
            shards[k].append(piece)

    client_indices = [
        np.concatenate(pieces) if pieces else np.empty(0, dtype=np.int64) for pieces in shards
    ]
    client_indices = _rebalance(client_indices)

    spec = PartitionSpec.from_indices(client_indices, concentration)
    logger.debug(
        "partition_built",
        num_clients=num_clients,
        concentration=concentration,
        sizes=[len(idx) for idx in spec.client_indices],
    )
    return spec


def _rebalance(client_indices: list[np.ndarray]) -> list[np.ndarray]:
    """Give each empty client one example from the largest client."""
    shards = [np.asarray(idx, dtype=np.int64) for idx in client_indices]
    for k in range(len(shards)):
        if len(shards[k]):
            continue
        donor = int(np.argmax([len(idx) for idx in shards]))
        if len(shards[donor]) <= 1:
            raise PartitionError(k, "not enough examples to give every client one")
        shards[k] = shards[donor][-1:]
        shards[donor] = shards[donor][:-1]
    return shards


def class_histograms(labels: np.ndarray, partition: PartitionSpec) -> np.ndarray:
    """Per-client class counts, shape (num_clients, num_classes)."""
    labels = np.asarray(labels)
    num_classes = int(labels.max()) + 1
    return np.stack(
        [np.bincount(labels[idx], minlength=num_classes) for idx in partition.client_indices]
    )


def label_skew(labels: np.ndarray, partition: PartitionSpec) -> np.ndarray:
    """Total-variation distance of each client's label distribution to the global one."""
    histograms = class_histograms(labels, partition).astype(np.float64)
    global_dist = histograms.sum(axis=0) / histograms.sum()
    local = histograms / histograms.sum(axis=1, keepdims=True)
    result: np.ndarray = 0.5 * np.abs(local - global_dist).sum(axis=1)
    return result
