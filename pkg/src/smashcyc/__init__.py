"""Exact computations with strong smash product algebras and their cyclic homology."""

__version__ = "0.1.0"
