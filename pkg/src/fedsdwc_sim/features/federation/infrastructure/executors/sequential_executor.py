"""Sequential client executor (default)."""

from collections.abc import Sequence

from fedsdwc_sim.features.federation.application.ports import ClientExecutorPort, ClientTask
from fedsdwc_sim.features.federation.application.use_cases.client_update import train_client
from fedsdwc_sim.features.federation.domain.entities import ClientResult, FederationConfig
from fedsdwc_sim.features.model.domain.entities import ModelParams
from fedsdwc_sim.features.objective.domain.entities import ObjectiveConfig


class SequentialClientExecutor(ClientExecutorPort):
    """Trains participants one after another in the calling thread."""

    @property
    def executor_name(self) -> str:
        return "sequential"

    def run(
        self,
        global_params: ModelParams,
        tasks: Sequence[ClientTask],
        config: FederationConfig,
        objective: ObjectiveConfig,
    ) -> list[ClientResult]:
        return [
            train_client(
                global_params, task.data, config, task.round_seed, objective, task.client_id
            )
            for task in tasks
        ]
