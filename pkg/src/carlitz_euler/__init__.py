"""Exact arithmetic for norm-coherent unit towers over local function
fields, Carlitz cyclotomic units, and Euler-system derivative classes."""

__version__ = "0.1.0"
