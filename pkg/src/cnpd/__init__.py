"""Exact analysis of CNP Dirichlet series kernels."""

__version__ = "0.1.0"
