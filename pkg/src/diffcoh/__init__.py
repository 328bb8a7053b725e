"""Exact-arithmetic cohomology of difference groups and difference Lie algebras."""

__version__ = "0.1.0"
