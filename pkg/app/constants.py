"""Application-wide constants.

Engine defaults, document schema version and CLI exit codes.
"""

APP_NAME = "Curve Delta Tool"
APP_VERSION = "0.1.0"

# Input documents / JSON reports
DOCUMENT_SCHEMA_VERSION = "1.0"

# Certified delta engine: iterative deepening precision
DEFAULT_D_INIT = 16
DEFAULT_D_MAX = 4096
ENGINE_STRATEGIES = ("closure", "monomials")
DEFAULT_STRATEGY = "closure"

# Prime fields: word-sized primes only
MAX_PRIME = 2**61

# Family scans
DEFAULT_POINT_COUNT = 4
DEFAULT_SCAN_WORKERS = 1

# CLI exit codes
EXIT_OK = 0
EXIT_UNDECIDED = 2
EXIT_INVALID_INPUT = 3
EXIT_AUDIT_FAIL = 4
