"""Data models — parameterizations, families, configuration and results."""
