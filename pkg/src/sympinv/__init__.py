"""Exact classification of symplectic group elements as products of
involutions and skew-involutions, with explicit witnesses and exhaustive
small-group verification."""

__version__ = "0.1.0"
