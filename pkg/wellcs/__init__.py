"""Coherent states of the one-dimensional infinite square well."""

__version__ = "1.0.0"
