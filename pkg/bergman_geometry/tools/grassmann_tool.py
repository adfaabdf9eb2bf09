# tools/grassmann_tool.py

"""Grassmann Tool - batch verification of the finite Grassmannian identities."""

import logging
from typing import Any, Dict, List, Tuple

import numpy as np

from ..core import cauchy_binet_check, fs_pullback_fd_check, grassmann_inverse_identity, random_sample
from .common import error_result

logger = logging.getLogger(__name__)

INVERSE_TOL = 1e-10
CAUCHY_BINET_TOL = 1e-10
PULLBACK_TOL = 1e-5


def _shapes(max_rows: int, max_columns: int) -> List[Tuple[int, int]]:
    return [(n, m) for n in range(1, max_rows + 1) for m in range(n, max_columns + 1)]


def check_grassmann(count: int = 100, seed: int = 0, max_rows: int = 3, max_columns: int = 7,
                    h: float = 1e-4) -> Dict[str, Any]:
    """
    Runs the inverse identity, Cauchy-Binet and pullback checks over random samples.

    Sample k uses seed + k and cycles through all shapes n <= max_rows, n <= m <= max_columns.

    Returns:
        Dict with the worst residual of each check, the failing sample count and
        'partial' set when some sample exceeds a tolerance
    """
    try:
        shapes = _shapes(max_rows, max_columns)
        worst = {"inverse_identity": 0.0, "cauchy_binet": 0.0, "fs_pullback": 0.0}
        failures = 0
        for k in range(count):
            n, m = shapes[k % len(shapes)]
            sample = random_sample(n, m, seed + k)
            rng = np.random.default_rng(seed + k + 1_000_003)
            e = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
            f = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))

            inverse = grassmann_inverse_identity(sample)
            _, _, binet = cauchy_binet_check(sample)
            pullback = fs_pullback_fd_check(sample, e, f, h)
            worst["inverse_identity"] = max(worst["inverse_identity"], inverse)
            worst["cauchy_binet"] = max(worst["cauchy_binet"], binet)
            worst["fs_pullback"] = max(worst["fs_pullback"], pullback)
            if inverse > INVERSE_TOL or binet > CAUCHY_BINET_TOL or pullback > PULLBACK_TOL:
                failures += 1
                logger.warning(f"Sample {k} ({n}x{m}, seed {seed + k}) exceeds a tolerance: "
                               f"{inverse:.2e}, {binet:.2e}, {pullback:.2e}")

        logger.info(f"Grassmann checks over {count} samples: worst {worst}")
        return {
            "success": True,
            "count": count,
            "seed": seed,
            "worst": worst,
            "failures": failures,
            "partial": failures > 0,
        }

    except Exception as e:
        logger.error(f"Error in Grassmann checks: {e}")
        return error_result(e, count=count, seed=seed)
