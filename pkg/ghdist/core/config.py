from __future__ import annotations
import os

# Absolute slack allowed on triangle inequalities and symmetry when validating input.
TOL_METRIC = float(os.getenv("GHDIST_TOL_METRIC", "1e-9"))
# Slack used by every property assertion.
TOL_NUM = float(os.getenv("GHDIST_TOL_NUM", "1e-9"))
# Pre-distances at or below this are identified when quotienting midpoint spaces.
TOL_QUOTIENT = float(os.getenv("GHDIST_TOL_QUOTIENT", "1e-12"))

DEFAULT_BUDGET = int(os.getenv("GHDIST_BUDGET", "2000000"))
# Hard cap on nX*nY for the brute-force correspondence oracle.
ORACLE_CAP = int(os.getenv("GHDIST_ORACLE_CAP", "25"))
# Largest nY**nX for which map searches enumerate instead of branching.
MAP_ENUM_CAP = int(os.getenv("GHDIST_MAP_ENUM_CAP", "200000"))

CACHE_RESULTS = os.getenv("GHDIST_CACHE") is not None
CACHE_DIR = os.path.expanduser(os.getenv("GHDIST_CACHE_DIR", ".cache/ghdist"))
