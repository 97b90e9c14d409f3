"""Desk-scale laboratory for edge statistics of Wigner random matrices."""

__version__ = "0.1.0"
