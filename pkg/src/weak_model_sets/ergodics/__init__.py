"""Residue class identities, ergodic averages and the truncated torus."""
