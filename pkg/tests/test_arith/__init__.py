"""Tests for the arith package"""
