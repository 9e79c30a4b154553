"""Exact integer arithmetic and certified Euler products."""
