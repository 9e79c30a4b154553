"""Tests for the pointsets package"""
