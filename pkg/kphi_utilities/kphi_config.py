"""
Default parameters and environment lookups.
"""
import os


DEFAULT_MAX_SAT_VARS = 24
DEFAULT_SAT_CHUNK = 1 << 16

# seeded_coords draws integers in [-box*(attempt+1), box*(attempt+1)]
DEFAULT_SEEDED_BOX = 1000
DEFAULT_SEED_RETRIES = 32

DEFAULT_APEX_BOX = 1000
DEFAULT_APEX_RETRIES = 16

DEFAULT_LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

ENV_MAX_WORKERS = 'KPHI_MAX_WORKERS'
ENV_LOG_LEVEL = 'KPHI_LOG_LEVEL'


def max_workers(default=None):
    """
    Worker thread cap from the KPHI_MAX_WORKERS environment variable.

    Parameters
    ----------
    default : int, optional
        Used when the variable is unset. If None, os.cpu_count() is used.

    Returns
    -------
    int, at least 1
    """
    value = os.environ.get(ENV_MAX_WORKERS)
    if value is None or value.strip() == '':
        workers = default if default is not None else (os.cpu_count() or 1)
    else:
        try:
            workers = int(value)
        except ValueError:
            workers = 1
    return max(1, workers)


def log_level(default='WARNING'):
    return os.environ.get(ENV_LOG_LEVEL, default).upper()
