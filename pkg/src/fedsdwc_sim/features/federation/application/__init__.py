"""Federation application module."""
