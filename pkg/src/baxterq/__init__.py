"""Numerical and exact verification tools for Baxter Q-operators of the
hyperbolic Ruijsenaars system."""

__version__ = "0.1.0"
