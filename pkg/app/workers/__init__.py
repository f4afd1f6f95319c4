"""Workers — thread-pool background computation."""
