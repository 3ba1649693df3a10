"""Quaternion extensions of dyadic local fields: construction via the
norm-equation method and exact computation of ramification break triples."""

from .errors import QuatramError

__all__ = ["QuatramError"]
__version__ = "0.1.0"
