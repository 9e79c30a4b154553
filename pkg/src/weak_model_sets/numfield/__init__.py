"""Quadratic integers of Q(sqrt 2), their ideals and embedded sets"""
