"""
Configuration loader for lrcheck
Loads environment variables and provides config objects
"""
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

# Logging Configuration
LOG_CONFIG = {
    'dir': os.getenv('LRCHECK_LOG_DIR', 'logs'),
    'level': os.getenv('LRCHECK_LOG_LEVEL', 'INFO').upper()
}

# Run Configuration
RUN_CONFIG = {
    'seed': os.getenv('LRCHECK_DEFAULT_SEED', '0'),
    'cases': os.getenv('LRCHECK_CASES', '25'),
    'max_arity': os.getenv('LRCHECK_MAX_ARITY', '5')
}

# Path Configuration
PATH_CONFIG = {
    'scenarios': os.getenv('LRCHECK_SCENARIO_DIR', 'scenarios')
}


def _as_int(value):
    try:
        return int(value)
    except (TypeError, ValueError):
        return None


def run_defaults():
    """RUN_CONFIG with integer values; call validate_config() first"""
    return {key: int(value) for key, value in RUN_CONFIG.items()}


# Validate settings
def validate_config():
    """Check that every LRCHECK_* variable is well formed"""
    problems = []

    if LOG_CONFIG['level'] not in LOG_LEVELS:
        problems.append(f"LRCHECK_LOG_LEVEL={LOG_CONFIG['level']!r} (expected one of {', '.join(LOG_LEVELS)})")

    seed = _as_int(RUN_CONFIG['seed'])
    if seed is None or seed < 0:
        problems.append(f"LRCHECK_DEFAULT_SEED={RUN_CONFIG['seed']!r} (expected a non-negative integer)")

    cases = _as_int(RUN_CONFIG['cases'])
    if cases is None or cases < 1:
        problems.append(f"LRCHECK_CASES={RUN_CONFIG['cases']!r} (expected an integer >= 1)")

    arity = _as_int(RUN_CONFIG['max_arity'])
    if arity is None or arity < 1:
        problems.append(f"LRCHECK_MAX_ARITY={RUN_CONFIG['max_arity']!r} (expected an integer >= 1)")

    if problems:
        raise ValueError(f"Invalid environment variables: {problems}")


if __name__ == "__main__":
    validate_config()
    print("✅ All config variables loaded successfully")
