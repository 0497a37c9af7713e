"""Reduction toolkit: constraint-logic machines to two-class disc-robot motion planning."""

__version__ = "0.1.0"
