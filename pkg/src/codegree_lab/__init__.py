"""Exact character tables and codegree checks for small solvable groups."""

__version__ = "0.1.0"
