"""Theory infrastructure: bound report storage."""

from fedsdwc_sim.features.theory.infrastructure.report_store import (
    BOUND_CSV,
    BOUND_JSON,
    bound_table,
    write_bound_report,
)

__all__ = ["BOUND_CSV", "BOUND_JSON", "bound_table", "write_bound_report"]
