"""Tests for the ergodics package"""
