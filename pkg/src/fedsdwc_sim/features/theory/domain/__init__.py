"""Theory domain entities."""

from fedsdwc_sim.features.theory.domain.entities import (
    SLOPE_DECADE,
    SLOPE_RANGE,
    SMALL_GAP,
    SMALL_SIGMA,
    BoundReport,
    BoundRow,
    ClientPrior,
    InstanceFamily,
    LinearGaussianInstance,
    MonteCarloEstimate,
    TheoryConfig,
)

__all__ = [
    "SLOPE_DECADE",
    "SLOPE_RANGE",
    "SMALL_GAP",
    "SMALL_SIGMA",
    "BoundReport",
    "BoundRow",
    "ClientPrior",
    "InstanceFamily",
    "LinearGaussianInstance",
    "MonteCarloEstimate",
    "TheoryConfig",
]
