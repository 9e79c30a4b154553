"""Visible, k-free and B-free lattice point sets."""
