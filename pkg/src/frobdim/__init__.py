"""Frobenius dimension of cluster-tilted algebras of Dynkin type A, D and E6."""

__version__ = "0.1.0"
