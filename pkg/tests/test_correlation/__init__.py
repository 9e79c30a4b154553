"""Tests for the correlation package"""
