"""Exact integer-polynomial arithmetic, real and complex root isolation, unit-disk counts."""
