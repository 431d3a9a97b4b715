"""Erdos-Ko-Rado toolkit for intersecting families of k-multisets."""

__version__ = "0.1.0"
