"""Exact Brieskorn-module and Gauss-Manin computations for quasi-homogeneous germs."""

__version__ = "0.1.0"
