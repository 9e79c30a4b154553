"""Integration Testing package"""
