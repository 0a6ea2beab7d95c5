"""Exception to exit-code mapping for the command line."""

from fedsdwc_sim.shared.core.logging import get_logger
from fedsdwc_sim.shared.domain.exceptions import (
    ArtifactNotFoundError,
    ConfigurationError,
    InvalidInputError,
    NumericError,
    SimulationError,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_SIMULATION_ERROR = 1
EXIT_CONFIGURATION_ERROR = 2
EXIT_ARTIFACT_NOT_FOUND = 3
EXIT_NUMERIC_ERROR = 4
EXIT_UNEXPECTED = 70

# First match wins, so subclasses come before SimulationError.
EXIT_CODES: list[tuple[type[BaseException], int, str]] = [
    (ConfigurationError, EXIT_CONFIGURATION_ERROR, "Invalid configuration"),
    (InvalidInputError, EXIT_CONFIGURATION_ERROR, "Invalid input"),
    (ArtifactNotFoundError, EXIT_ARTIFACT_NOT_FOUND, "Artifact not found"),
    (NumericError, EXIT_NUMERIC_ERROR, "Numeric failure"),
    (SimulationError, EXIT_SIMULATION_ERROR, "Simulation failed"),
]


def handle_exception(exc: BaseException) -> int:
    """Log a failed command and return its exit status."""
    for exc_type, code, title in EXIT_CODES:
        if isinstance(exc, exc_type):
            logger.error("command_failed", error=title, detail=str(exc), exit_code=code)
            return code
    logger.error(
        "command_crashed", error=type(exc).__name__, exit_code=EXIT_UNEXPECTED, exc_info=exc
    )
    return EXIT_UNEXPECTED
