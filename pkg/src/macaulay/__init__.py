"""Macaulay constants, cone decompositions and regularity bounds for graded modules."""

__version__ = "0.1.0"
