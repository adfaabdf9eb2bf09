# __init__.py

"""Bergman Geometry - numerical study of Bergman-metric geodesic balls."""

import logging
import os

# Configure logging
_LEVELS = {"error": "ERROR", "warn": "WARNING", "info": "INFO", "debug": "DEBUG"}

loglevel = os.getenv("BERGMAN_LOG", "warn")
numeric_level = getattr(logging, _LEVELS.get(loglevel.lower(), loglevel.upper()), None)
if not isinstance(numeric_level, int):
    raise ValueError(f"Invalid log level: {loglevel}")

logger = logging.getLogger(__package__)
logger.setLevel(numeric_level)

__version__ = "0.3.0"

__all__ = ['logger', '__version__']
