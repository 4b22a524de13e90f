"""
Configuration for congruence-kit
Values come from the environment (or a local .env file) with safe defaults
"""

import os

from dotenv import load_dotenv

load_dotenv()

BASE_DIR = os.path.dirname(os.path.abspath(__file__))

# Search budget for GL(n, Z_d) enumeration (group elements)
DEFAULT_BUDGET = int(os.getenv('CONGRUENCE_KIT_BUDGET', '100000000'))

# Certificate groups up to this order are stored as explicit multiplication tables
TABLE_LIMIT = int(os.getenv('CONGRUENCE_KIT_TABLE_LIMIT', '343'))

# Golden files (catalog diagrams, example presentations)
DATA_DIR = os.getenv('CONGRUENCE_KIT_DATA_DIR', os.path.join(BASE_DIR, 'data'))

# Logging
LOG_FILE = os.getenv('CONGRUENCE_KIT_LOG_FILE', os.path.join('logs', 'congruence_kit.log'))
LOG_LEVEL = os.getenv('CONGRUENCE_KIT_LOG_LEVEL', 'WARNING')
LOG_MAX_BYTES = int(os.getenv('CONGRUENCE_KIT_LOG_MAX_BYTES', str(10 * 1024 * 1024)))
LOG_BACKUPS = int(os.getenv('CONGRUENCE_KIT_LOG_BACKUPS', '5'))


def get_budget(override=None) -> int:
    """Resolve the GL search budget: explicit value first, then the environment."""
    if override is not None:
        return int(override)
    return int(os.getenv('CONGRUENCE_KIT_BUDGET', str(DEFAULT_BUDGET)))
