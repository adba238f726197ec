"""
Milnor Constraint Analyzer Configuration
Centralized configuration for the polar-curve / Lê-cycle analysis and the
monodromy constraint engine.
"""

import os
from pathlib import Path

# Base paths
BASE_DIR = Path(__file__).parent.resolve()
DATA_DIR = BASE_DIR / "data"
GOLDEN_DIR = BASE_DIR / "golden"

# Create directories if they don't exist
for directory in [DATA_DIR]:
    directory.mkdir(parents=True, exist_ok=True)

# Analysis settings
ANALYSIS_CONFIG = {
    'truncation_factor': 4,  # working truncation = factor * total degree of f
    'truncation_cap': int(os.environ.get('MILNOR_TRUNC_CAP', '256')),
    'profile': os.environ.get('MILNOR_PROFILE', 'standard'),
    'slice_depth': 2,  # recursion depth when analyzing f restricted to z0 = 0
    'output_format': 'text',
}

PROFILES = ('standard', 'strict')
PROFILE_ALIASES = {'paper': 'standard'}
OUTPUT_FORMATS = ('text', 'structured')

# Golden fixtures
GOLDEN_CONFIG = {
    'fixture_dir': Path(os.environ.get('MILNOR_GOLDEN_DIR', str(GOLDEN_DIR))),
    'max_workers': 4,
}

# Logging configuration
LOG_CONFIG = {
    'log_file': DATA_DIR / 'milnor_constraints.log',
    'log_level': os.environ.get('MILNOR_LOG_LEVEL', 'INFO'),
    'log_format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
}

# Cache file for golden run history
CACHE_FILE = DATA_DIR / 'golden_runs.json'

# Structured report schema
REPORT_SCHEMA_VERSION = 1

# Process exit codes
EXIT_CODES = {
    'clean': 0,
    'warnings': 1,
    'analysis': 2,
    'config': 3,
}
