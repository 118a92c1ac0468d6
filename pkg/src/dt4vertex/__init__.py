"""Exact equivariant DT4 vertex weights for Hilbert schemes of points on C^4."""

__version__ = "0.1.0"
