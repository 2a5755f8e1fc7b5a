"""Computation engine package."""
