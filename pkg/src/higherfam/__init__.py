"""Exact-rational engine for Chern characters of higher order minimal families."""

__version__ = "0.1.0"
