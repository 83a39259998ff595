"""Computational tools for automatic groups: word problems, centres, finite skeleta,
cohomology and central extensions."""

__version__ = "0.1.0"
