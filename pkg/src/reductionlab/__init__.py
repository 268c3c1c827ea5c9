"""Reduction procedures for classical and quantum dynamics."""

__version__ = "0.1.0"
