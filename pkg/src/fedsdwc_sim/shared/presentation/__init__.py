"""Shared presentation module."""

from fedsdwc_sim.shared.presentation.exception_handlers import (
    EXIT_CODES,
    EXIT_OK,
    handle_exception,
)

__all__ = ["EXIT_CODES", "EXIT_OK", "handle_exception"]
