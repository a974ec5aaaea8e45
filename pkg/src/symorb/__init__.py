"""Exact invariants and ring structures of symmetric-product orbifolds."""

__version__ = "0.1.0"
