"""Certified root isolation over multiple algebraic extensions."""

__version__ = "0.1.0"

__all__ = ["__version__"]
