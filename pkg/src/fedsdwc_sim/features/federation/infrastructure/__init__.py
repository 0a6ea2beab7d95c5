"""Federation infrastructure module."""

from fedsdwc_sim.features.federation.infrastructure.executor_factory import get_client_executor

__all__ = ["get_client_executor"]
