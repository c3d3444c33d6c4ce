"""Groebner verification of mod-2 Morava K-theory presentations, order 32."""

__version__ = "0.1.0"
