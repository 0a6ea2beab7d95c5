"""Client executor factory - Dependency injection."""

from functools import lru_cache

from fedsdwc_sim.features.federation.application.ports import ClientExecutorPort
from fedsdwc_sim.features.federation.infrastructure.executors import (
    SequentialClientExecutor,
    ThreadPoolClientExecutor,
)
from fedsdwc_sim.shared.core.settings import get_settings


@lru_cache
def get_client_executor() -> ClientExecutorPort:
    """
    Get the client executor based on configuration.

    Factory function for dependency injection.
    """
    settings = get_settings()

    match settings.executor:
        case "threads":
            return ThreadPoolClientExecutor(max_workers=settings.max_workers)
        case _:
            return SequentialClientExecutor()
