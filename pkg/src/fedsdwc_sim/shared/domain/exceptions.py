"""Domain exceptions for the simulator."""


class SimulationError(Exception):
    """Base exception for simulation errors."""

    pass


class InvalidInputError(SimulationError):
    """Raised when an argument violates an operation's precondition."""

    def __init__(self, field: str, reason: str) -> None:
        self.field = field
        self.reason = reason
        super().__init__(f"Invalid '{field}': {reason}")


class ShapeMismatchError(SimulationError):
    """Raised when an array does not have the configured shape."""

    def __init__(self, name: str, expected: object, actual: object) -> None:
        self.name = name
        self.expected = expected
        self.actual = actual
        super().__init__(f"Shape mismatch for '{name}': expected {expected}, got {actual}")


class NumericError(SimulationError):
    """Raised when a head output or loss term is not finite."""

    def __init__(self, term: str, detail: str = "non-finite value") -> None:
        self.term = term
        super().__init__(f"Numeric failure in '{term}': {detail}")


class PartitionError(SimulationError):
    """Raised when a client cannot receive any data."""

    def __init__(self, client_id: int, reason: str) -> None:
        self.client_id = client_id
        super().__init__(f"Client {client_id} partition failed: {reason}")


class AggregationError(SimulationError):
    """Raised when client parameter sets cannot be averaged."""

    def __init__(self, array_name: str, reason: str) -> None:
        self.array_name = array_name
        super().__init__(f"Cannot aggregate '{array_name}': {reason}")


class ConfigurationError(SimulationError):
    """Raised when an experiment configuration is invalid."""

    def __init__(self, field_path: str, message: str) -> None:
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}")


class ArtifactNotFoundError(SimulationError):
    """Raised when an expected run artifact is missing."""

    def __init__(self, path: str, artifact: str) -> None:
        self.path = path
        self.artifact = artifact
        super().__init__(f"'{artifact}' not found in '{path}'")
