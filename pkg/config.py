"""
Configuration file for the Coxeter reflection centralizer toolkit.
Contains project-wide constants and settings.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Absolute path to the project root
ROOT_DIR = Path(__file__).resolve().parent

# Data directory
DATA_DIR = ROOT_DIR / "Data"

# Named diagram figures shipped as diagram files
DIAGRAMS_DIR = DATA_DIR / "diagrams"

# Numeric verification defaults (CLI flags override these)
TOLERANCE = float(os.environ.get("CENTRALIZER_TOLERANCE", "1e-8"))
ORDER_BOUND = int(os.environ.get("CENTRALIZER_ORDER_BOUND", "50"))
MAX_ORDER = int(os.environ.get("CENTRALIZER_MAX_ORDER", "200000"))
MAX_ROOTS = int(os.environ.get("CENTRALIZER_MAX_ROOTS", "20000"))
HASH_GRID = float(os.environ.get("CENTRALIZER_HASH_GRID", "1e-9"))

# Logging
LOG_LEVEL = os.environ.get("CENTRALIZER_LOG_LEVEL", "INFO").upper()

# HTTP surface
API_PORT = int(os.environ.get("CENTRALIZER_API_PORT", "5555"))
ALLOWED_ORIGINS = os.environ.get("ALLOWED_ORIGINS", "*")
