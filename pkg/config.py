"""Configuration file for the solvlie conjugacy kernel."""

import os
from dotenv import load_dotenv

load_dotenv()

# Enumeration caps
MAX_SUBSPACES = int(os.getenv("SOLVLIE_MAX_SUBSPACES", "100000"))
MAX_GROUP_ELEMENTS = int(os.getenv("SOLVLIE_MAX_GROUP_ELEMENTS", "1000000"))
MAX_CONJUGATOR_SEARCH = int(os.getenv("SOLVLIE_MAX_CONJUGATOR_SEARCH", "100000"))

# Random generation
DEFAULT_SEED = int(os.getenv("SOLVLIE_SEED", "42"))
RANDOM_MAX_ATTEMPTS = 200
RANDOM_AMBIENT_N = 3
RANDOM_TARGET_DIMS = [2, 3, 4]
RATIONAL_ENTRY_RANGE = 2  # entries drawn from [-2, 2] over Q

# Theorem sweeps
AUTOMORPHISM_SAMPLES = 25  # per algebra
DEFAULT_CATALOG = "gf2,gf3,dim<=4"
SUITES = [
    "all",
    "core",
    "conjugator",
    "lemma",
    "bijection",
    "intersection",
    "automorphism",
]

# Logging
LOG_LEVEL = os.getenv("SOLVLIE_LOG_LEVEL", "WARNING")

# Paths
DATA_DIR = "data"
FIXTURES_DIR = "data/fixtures"
DEBUG_OUTPUT_DIR = "data/debug_output"
