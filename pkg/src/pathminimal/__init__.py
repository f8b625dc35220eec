"""Finite windows of lexicographical sums over recurrent words, and checks on them."""

__version__ = "0.1.0"
