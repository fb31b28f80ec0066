"""Exact computer algebra for nonstandard Hecke algebras of dihedral groups."""

__version__ = "0.1.0"
