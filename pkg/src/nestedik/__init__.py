"""Nested Izergin-Korepin analysis of gl(M+1) lattice partition functions."""

__version__ = "0.1.0"
