"""Formal group laws and unit-root Frobenius matrices attached to Laurent polynomials."""

__version__ = "0.1.0"
