"""
Configuration module for the affine cell engine.
Loads environment variables and exposes run defaults for every command.
"""

import os
import logging
from dotenv import load_dotenv

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('config')

# Load environment variables from .env file if it exists
load_dotenv()


def _int_env(name, default):
    """Read an integer environment variable, falling back to the default."""
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Invalid integer for {name}: {raw}. Using {default}.")
        return default


# Storage locations
CACHE_DIR = os.getenv("CELLS_CACHE_DIR", "cache")
EXPORT_DIR = os.getenv("CELLS_EXPORT_DIR", "exports")
USE_CACHE = os.getenv("CELLS_USE_CACHE", "True").lower() in ("true", "1", "t")

# Resource guard for ball enumeration
BALL_CAP = _int_env("CELLS_BALL_CAP", 2_000_000)

# Cell windows
WINDOW_GROWTH = _int_env("CELLS_WINDOW_GROWTH", 4)
CORE_MARGIN = _int_env("CELLS_CORE_MARGIN", 4)
A_RADIUS = _int_env("CELLS_A_RADIUS", 8)
SEARCH_HEIGHT = _int_env("CELLS_SEARCH_HEIGHT", 8)

# Product length bound for a-values per type; G2 needs 12 to certify a = 3 and a = 6
A_RADII = {
    "A1": _int_env("CELLS_A_RADIUS_A1", A_RADIUS),
    "A2": _int_env("CELLS_A_RADIUS_A2", A_RADIUS),
    "A3": _int_env("CELLS_A_RADIUS_A3", A_RADIUS),
    "B2": _int_env("CELLS_A_RADIUS_B2", A_RADIUS),
    "B3": _int_env("CELLS_A_RADIUS_B3", A_RADIUS),
    "C3": _int_env("CELLS_A_RADIUS_C3", A_RADIUS),
    "G2": _int_env("CELLS_A_RADIUS_G2", max(A_RADIUS, 12)),
}

# Convention tag, part of every cache key
CONVENTION = os.getenv("CELLS_CONVENTION", "left-kl/inverse-alcove")

# Default ball radius per type, tuned so that all non-lowest rank-2 cells complete
DEFAULT_RADII = {
    "A1": _int_env("DEFAULT_RADIUS_A1", 12),
    "A2": _int_env("DEFAULT_RADIUS_A2", 16),
    "A3": _int_env("DEFAULT_RADIUS_A3", 6),
    "B2": _int_env("DEFAULT_RADIUS_B2", 16),
    "B3": _int_env("DEFAULT_RADIUS_B3", 5),
    "C3": _int_env("DEFAULT_RADIUS_C3", 5),
    "G2": _int_env("DEFAULT_RADIUS_G2", 12),
}

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

numeric_level = getattr(logging, LOG_LEVEL, None)
if not isinstance(numeric_level, int):
    numeric_level = logging.INFO
    logger.warning(f"Invalid log level: {LOG_LEVEL}. Defaulting to INFO.")

logging.getLogger().setLevel(numeric_level)


def default_radius(type_name):
    """
    Default ball radius for a type name such as "A2".

    Args:
        type_name (str): Series letter followed by rank

    Returns:
        int: Radius from the environment or the built-in table
    """
    return DEFAULT_RADII.get(type_name.upper(), 8)


def default_a_radius(type_name):
    """
    Product length bound used when certifying a-values for a type.

    Args:
        type_name (str): Series letter followed by rank

    Returns:
        int: Bound from the environment or the per-type table
    """
    return A_RADII.get(type_name.upper(), A_RADIUS)


def validate_config():
    """Validate the configuration settings."""
    warnings = []

    for name, value in (("CELLS_BALL_CAP", BALL_CAP),
                        ("CELLS_A_RADIUS", A_RADIUS),
                        ("CELLS_SEARCH_HEIGHT", SEARCH_HEIGHT)):
        if value <= 0:
            warnings.append(f"{name} should be positive, got {value}")

    for type_name, value in A_RADII.items():
        if value <= 0:
            warnings.append(f"CELLS_A_RADIUS_{type_name} should be positive, got {value}")

    if WINDOW_GROWTH < 0 or CORE_MARGIN < 0:
        warnings.append("Window growth and core margin must be nonnegative")

    smallest = min(DEFAULT_RADII.values())
    if CORE_MARGIN >= smallest:
        warnings.append(
            f"Core margin {CORE_MARGIN} leaves an empty core for radius {smallest}"
        )

    if "/" not in CONVENTION:
        warnings.append(f"Unusual convention tag: {CONVENTION}")

    for warning in warnings:
        logger.warning(warning)

    return not warnings


# Validate configuration on module import
config_valid = validate_config()
if not config_valid:
    logger.warning("Configuration validation failed. Defaults may not suit large windows.")
