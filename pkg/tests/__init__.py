"""
Test suite for orthozeros.
"""
