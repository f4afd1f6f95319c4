"""Core computation — fields, series, the certified engine, families and I/O."""
