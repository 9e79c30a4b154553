"""Autocorrelation coefficients of lattice point sets."""
