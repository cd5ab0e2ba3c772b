"""Exact computations in the admissible graph cooperad and its framed extension."""

__version__ = "0.1.0"
