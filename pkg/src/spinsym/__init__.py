"""Exact generalized-symmetry engine for massless free fields of spin s."""

__version__ = "0.1.0"
