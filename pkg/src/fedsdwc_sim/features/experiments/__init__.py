"""Experiments feature: config loading, orchestration and run comparison."""
