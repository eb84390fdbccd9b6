"""Exact-arithmetic toolkit for truncated l-groups and their pointfree representation."""

__version__ = "0.1.0"
