"""Client executor port (interface)."""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass

from fedsdwc_sim.features.data.domain.entities import LabeledDataset
from fedsdwc_sim.features.federation.domain.entities import ClientResult, FederationConfig
from fedsdwc_sim.features.model.domain.entities import ModelParams
from fedsdwc_sim.features.objective.domain.entities import ObjectiveConfig


@dataclass
class ClientTask:
    """Work item for one participant in one round."""

    client_id: int
    data: LabeledDataset
    round_seed: int


class ClientExecutorPort(ABC):
    """
    Runs the local updates of one round.

    Implementations:
    - SequentialClientExecutor
    - ThreadPoolClientExecutor
    """

    @property
    @abstractmethod
    def executor_name(self) -> str:
        """Get the executor name."""
        pass

    @abstractmethod
    def run(
        self,
        global_params: ModelParams,
        tasks: Sequence[ClientTask],
        config: FederationConfig,
        objective: ObjectiveConfig,
    ) -> list[ClientResult]:
        """
        Train every task from the same broadcast parameters.

        Results are returned in task order; ``global_params`` is never mutated.
        """
        pass
