"""Exact integer computation of the Chow ring of the moduli stack of genus-2 Prym pairs."""

__version__ = "0.1.0"
