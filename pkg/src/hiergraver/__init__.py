"""Exact-integer Markov/Graver machinery for hierarchical contingency-table models."""

__version__ = "0.1.0"

CANONICAL_ORDER_VERSION = 1
