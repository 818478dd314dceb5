"""Numerical special functions and identity verification for star-triangle models."""
__version__ = "0.1.0"
