"""Genus-2 curves with everywhere good reduction: arithmetic, invariants and matching."""

__version__ = "0.1.0"
