"""Exact finite computations for equivariant algebraic K-theory constructions."""

__version__ = "0.1.0"
