"""Entangled coherent state simulation toolkit."""

__version__ = "0.1.0"
