"""Exact and p-adic verification of the rational points on the curve C0(5)
of Galois-stable 5-cycles for z^2 + c."""

__version__ = "0.1.0"
