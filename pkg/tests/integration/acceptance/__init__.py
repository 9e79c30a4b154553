"""Integration tests reproducing the published numbers at full scale"""
