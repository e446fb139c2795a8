"""
Centralised configuration helper.

Every module that needs a size bound should call::

    from config import get_limits

The limits are built once from the environment (a ``.env`` file is honoured)
and read at call time, so tests can patch ``config.LIMITS``.

Invalid values never abort a run: they are logged and replaced by the
default.
"""

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_MAX_TREE_SIZE = 12
DEFAULT_SERIES_ORDER = 16
DEFAULT_CYCLE_BOUND = 9
DEFAULT_LOG_LEVEL = 'INFO'


@dataclass(frozen=True)
class Limits:
    """Global bounds protecting against accidental blow-up."""
    max_tree_size: int = DEFAULT_MAX_TREE_SIZE
    series_order: int = DEFAULT_SERIES_ORDER
    cycle_bound: int = DEFAULT_CYCLE_BOUND


# ---------------------------------------------------------------------------
# Build LIMITS from environment
# ---------------------------------------------------------------------------

def _read_positive_int(name, default):
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except (ValueError, TypeError):
        logger.error(f"Invalid {name} value: {raw}, using default {default}")
        return default
    if value < 1:
        logger.error(f"{name} must be positive, got {value}; using default {default}")
        return default
    return value


def _build_limits():
    limits = Limits(
        max_tree_size=_read_positive_int('ANDRE_MAX_TREE_SIZE', DEFAULT_MAX_TREE_SIZE),
        series_order=_read_positive_int('ANDRE_SERIES_ORDER', DEFAULT_SERIES_ORDER),
        cycle_bound=_read_positive_int('ANDRE_CYCLE_BOUND', DEFAULT_CYCLE_BOUND),
    )
    logger.debug("Limits configured: %s", limits)
    return limits


LIMITS = _build_limits()


def get_limits():
    """Return the active :class:`Limits`."""
    return LIMITS


# ---------------------------------------------------------------------------
# Plain settings (lives here so services never read os.environ themselves)
# ---------------------------------------------------------------------------


def get_setting(key, default=None):
    """Read a single setting from the environment.

    Returns *default* when the variable is unset or blank.
    """
    value = os.environ.get(key)
    if value is None or not value.strip():
        return default
    return value.strip()


def get_log_level():
    """Resolve ``LOG_LEVEL`` to a logging level, falling back to INFO."""
    name = get_setting('LOG_LEVEL', DEFAULT_LOG_LEVEL).upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        logger.warning(f"Unknown LOG_LEVEL '{name}', using {DEFAULT_LOG_LEVEL}")
        return logging.INFO
    return level
