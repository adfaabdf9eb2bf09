# infra/config.py

import os
from typing import Any, Dict, Tuple

from dotenv import dotenv_values, load_dotenv

load_dotenv()

BERGMAN_TOL_ABS = float(os.getenv("BERGMAN_TOL_ABS", "1e-14"))
BERGMAN_MAX_TERMS = int(os.getenv("BERGMAN_MAX_TERMS", "1000000"))
BERGMAN_BOUNDARY_MARGIN = float(os.getenv("BERGMAN_BOUNDARY_MARGIN", "1e-9"))
BERGMAN_NODES = int(os.getenv("BERGMAN_NODES", "64"))
BERGMAN_QUAD_ORDER = int(os.getenv("BERGMAN_QUAD_ORDER", "8"))
BERGMAN_QUAD_TOL = float(os.getenv("BERGMAN_QUAD_TOL", "1e-10"))

DEFAULT_R_GRID: Tuple[float, ...] = (1e-4, 1e-6, 1e-8, 1e-10, 1e-12)
DEFAULT_EPSILON = 0.05

DOMAIN_KIND_MAPPING: Dict[str, str] = {
    "disk": "disk",
    "unit_disk": "disk",
    "annulus": "annulus",
    "product": "product",
}

OUTPUT_FORMATS = ("csv", "json")


def _flag(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes", "on")


# key in a config file -> (ExperimentConfig field, parser)
CONFIG_FILE_KEYS: Dict[str, Tuple[str, Any]] = {
    "R_GRID": ("r_grid", lambda text: tuple(float(v) for v in text.split(",") if v.strip())),
    "EPSILON": ("epsilon", float),
    "NODES": ("nodes", int),
    "QUAD_ORDER": ("quad_order", int),
    "TOL": ("tol", float),
    "TOL_ABS": ("tol_abs", float),
    "MAX_TERMS": ("max_terms", int),
    "BOUNDARY_MARGIN": ("boundary_margin", float),
    "FORMAT": ("output_format", str.lower),
    "PLOT": ("plot", _flag),
    "SEED": ("seed", int),
    "WORKERS": ("workers", int),
    "REQUIRE_SMALLNESS": ("require_smallness", _flag),
    "OPTIMIZE": ("optimize", _flag),
    "INCLUDE_TIMING": ("include_timing", _flag),
}


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Parse a KEY=VALUE file into typed run settings.

    Keys may carry a BERGMAN_ prefix and are case-insensitive. Unknown keys raise
    ValueError so typos do not pass silently.
    """
    if not os.path.isfile(path):
        raise FileNotFoundError(f"Config file not found: {path}")
    settings: Dict[str, Any] = {}
    for raw_key, raw_value in dotenv_values(path).items():
        key = raw_key.upper()
        if key.startswith("BERGMAN_"):
            key = key[len("BERGMAN_"):]
        if key not in CONFIG_FILE_KEYS:
            raise ValueError(f"Unknown config key {raw_key!r} in {path}")
        if raw_value is None:
            continue
        name, parse = CONFIG_FILE_KEYS[key]
        try:
            settings[name] = parse(raw_value)
        except ValueError as e:
            raise ValueError(f"Bad value for {raw_key!r} in {path}: {raw_value!r}") from e
    return settings
