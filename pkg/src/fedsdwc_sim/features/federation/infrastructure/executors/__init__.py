"""Client executor adapters."""

from fedsdwc_sim.features.federation.infrastructure.executors.sequential_executor import (
    SequentialClientExecutor,
)
from fedsdwc_sim.features.federation.infrastructure.executors.thread_pool_executor import (
    ThreadPoolClientExecutor,
)

__all__ = ["SequentialClientExecutor", "ThreadPoolClientExecutor"]
