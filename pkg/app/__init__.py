"""Curve Delta Tool — certified delta invariants of parameterized curve singularities."""
