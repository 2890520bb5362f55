"""Exact and high-precision verification tools for the completed generating
functions of reciprocal-sum moments over partitions into distinct parts."""

__version__ = "0.1.0"
