"""Tests for the diffraction package"""
