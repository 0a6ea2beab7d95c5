"""Federation use cases."""

from fedsdwc_sim.features.federation.application.use_cases.aggregation import fedavg_aggregate
from fedsdwc_sim.features.federation.application.use_cases.client_update import (
    client_update,
    clip_gradients,
    iterate_batches,
    local_objective,
    step_seed,
    train_client,
)
from fedsdwc_sim.features.federation.application.use_cases.run_federation import (
    EvalHook,
    client_round_seed,
    init_global_params,
    run_federation,
    sample_participants,
)

__all__ = [
    "EvalHook",
    "client_round_seed",
    "client_update",
    "clip_gradients",
    "fedavg_aggregate",
    "init_global_params",
    "iterate_batches",
    "local_objective",
    "run_federation",
    "sample_participants",
    "step_seed",
    "train_client",
]
