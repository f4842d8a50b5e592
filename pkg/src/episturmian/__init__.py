"""Bispecial factors, return words and critical exponents of episturmian sequences."""

__version__ = "0.1.0"
