"""Exact policy iteration on (deterministic) MDPs and the cycle-counting machinery behind it."""

__version__ = "0.1.0"
