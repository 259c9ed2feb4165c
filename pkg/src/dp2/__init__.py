"""Exact-arithmetic toolkit for orbifold degree-2 del Pezzo fibrations over P^1."""

__version__ = "0.1.0"
