"""Test suite for Curve Delta Tool."""
