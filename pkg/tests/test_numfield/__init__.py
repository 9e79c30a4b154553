"""Tests for the numfield package"""
