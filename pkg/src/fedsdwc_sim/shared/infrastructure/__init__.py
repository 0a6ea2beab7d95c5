"""Shared infrastructure module."""

from fedsdwc_sim.shared.infrastructure.serialization import (
    NdjsonWriter,
    dumps_canonical,
    read_json,
    write_json,
)

__all__ = ["NdjsonWriter", "dumps_canonical", "read_json", "write_json"]
