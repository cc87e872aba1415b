"""Dimer and web combinatorics for twists of Grassmannian cluster variables."""

__version__ = "0.1.0"
