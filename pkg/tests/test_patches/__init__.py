"""Tests for the patches package"""
