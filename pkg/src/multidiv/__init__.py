"""Exact and numerical tools for multivariable divisor-function averages."""

__version__ = "0.1.0"
