"""
Persistent cache for Kazhdan-Lusztig tables.
Tables live at <cache dir>/<type>/<convention slug>/kl_r<radius>.json so that a
change of convention never reuses stale data.
"""

import os
import re
import json
import logging

import config
from hecke import KLTable

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('kl_cache')


def convention_slug(convention=None):
    """Filesystem-safe form of a convention tag."""
    convention = convention or config.CONVENTION
    return re.sub(r"[^A-Za-z0-9]+", "_", convention).strip("_")


def cache_path(type_name, radius, cache_dir=None, convention=None):
    """
    Path of the cached table for a type and radius.

    Args:
        type_name (str): Type such as "A2"
        radius (int): Ball radius the table covers
        cache_dir (str, optional): Cache root, defaults to CELLS_CACHE_DIR
        convention (str, optional): Convention tag, defaults to CELLS_CONVENTION

    Returns:
        str: JSON file path
    """
    cache_dir = cache_dir or config.CACHE_DIR
    return os.path.join(cache_dir, type_name, convention_slug(convention), f"kl_r{radius}.json")


def _cached_radii(type_name, cache_dir, convention):
    folder = os.path.dirname(cache_path(type_name, 0, cache_dir, convention))
    if not os.path.isdir(folder):
        return []
    radii = []
    for filename in os.listdir(folder):
        match = re.fullmatch(r"kl_r(\d+)\.json", filename)
        if match:
            radii.append(int(match.group(1)))
    return sorted(radii)


def load_table(group, radius, cache_dir=None, convention=None):
    """
    Load a cached table covering the radius, if any.

    A table stored for a larger radius satisfies a request for a smaller one.
    Corrupt or mismatched files are skipped with a warning.

    Returns:
        KLTable or None: Seeded table, or None on a miss
    """
    convention = convention or config.CONVENTION
    for stored in _cached_radii(group.name, cache_dir, convention):
        if stored < radius:
            continue
        path = cache_path(group.name, stored, cache_dir, convention)
        try:
            with open(path, "r") as f:
                data = json.load(f)
            if data.get("type") != group.name or data.get("convention") != convention:
                logger.warning(f"Cache file {path} does not match {group.name}/{convention}; ignoring")
                continue
            table = KLTable(group)
            loaded = table.load_rows(data.get("rows", []))
            logger.info(f"Cache hit: {loaded} KL pairs for {group.name} from {path}")
            return table
        except Exception as e:
            logger.warning(f"Error reading KL cache {path}: {e}")
    logger.info(f"Cache miss for {group.name} at radius {radius}")
    return None


def save_table(table, radius, cache_dir=None, convention=None):
    """
    Write a table to the cache.

    Returns:
        str or None: Path written, or None if writing failed
    """
    convention = convention or config.CONVENTION
    path = cache_path(table.group.name, radius, cache_dir, convention)
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        payload = {
            "type": table.group.name,
            "convention": convention,
            "radius": radius,
            "rows": table.rows(),
        }
        with open(path, "w") as f:
            json.dump(payload, f)
        logger.info(f"Saved {len(payload['rows'])} KL pairs to {path}")
        return path
    except Exception as e:
        logger.error(f"Error writing KL cache {path}: {e}")
        return None


def table_for_window(group, elements, radius, use_cache=None, cache_dir=None):
    """
    A KL table filled on the given window, using the cache when enabled.

    Args:
        group (AffineWeylGroup): Group
        elements (list): Window elements
        radius (int): Window radius, part of the cache key
        use_cache (bool, optional): Defaults to CELLS_USE_CACHE
        cache_dir (str, optional): Cache root

    Returns:
        KLTable: Table containing every pair of the window
    """
    use_cache = config.USE_CACHE if use_cache is None else use_cache
    table = load_table(group, radius, cache_dir) if use_cache else None
    fresh = table is None
    if fresh:
        table = KLTable(group)
    before = len(table)
    table.fill(elements)
    if use_cache and (fresh or len(table) > before):
        save_table(table, radius, cache_dir)
    return table
