"""
Unit tests for the S-limited shift toolkit.
"""
