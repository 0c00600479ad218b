"""Exact homological algebra for finite-dimensional algebras."""
