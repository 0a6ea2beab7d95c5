"""Shared kernel: settings, logging, errors and serialization."""
