"""Numerical reasoning probes for tabular NLI."""

__version__ = "0.1.0"
