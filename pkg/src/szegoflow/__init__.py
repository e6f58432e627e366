"""Truncated Hankel operators and the exact flow of the cubic Szego equation."""
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
