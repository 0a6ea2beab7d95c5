"""Thread-pool client executor."""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

from fedsdwc_sim.features.federation.application.ports import ClientExecutorPort, ClientTask
from fedsdwc_sim.features.federation.application.use_cases.client_update import train_client
from fedsdwc_sim.features.federation.domain.entities import ClientResult, FederationConfig
from fedsdwc_sim.features.model.domain.entities import ModelParams
from fedsdwc_sim.features.objective.domain.entities import ObjectiveConfig


class ThreadPoolClientExecutor(ClientExecutorPort):
    """
    Trains participants concurrently.

    Each task clones the broadcast parameters and draws from its own seed, so
    results match the sequential executor.
    """

    def __init__(self, max_workers: int = 4) -> None:
        self._max_workers = max_workers

    @property
    def executor_name(self) -> str:
        return "threads"

    def run(
        self,
        global_params: ModelParams,
        tasks: Sequence[ClientTask],
        config: FederationConfig,
        objective: ObjectiveConfig,
    ) -> list[ClientResult]:
        with ThreadPoolExecutor(max_workers=self._max_workers) as pool:
            futures = [
                pool.submit(
                    train_client,
                    global_params,
                    task.data,
                    config,
                    task.round_seed,
                    objective,
                    task.client_id,
                )
                for task in tasks
            ]
            return [future.result() for future in futures]
