"""
Test suite for cyclotower.
"""
