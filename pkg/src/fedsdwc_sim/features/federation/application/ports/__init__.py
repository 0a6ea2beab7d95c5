"""Federation ports."""

from fedsdwc_sim.features.federation.application.ports.client_executor_port import (
    ClientExecutorPort,
    ClientTask,
)

__all__ = ["ClientExecutorPort", "ClientTask"]
