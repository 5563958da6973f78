"""Exact verifier for an exceptional-collection mutation equivalence on the G2 flag divisor."""

__version__ = "0.1.0"
