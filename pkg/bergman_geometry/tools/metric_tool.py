# tools/metric_tool.py

"""Metric Tool - Bergman metric, Ricci curvature and the tilde metric at a point."""

import logging
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..core import tilde_metric
from .common import build_domain, build_point, build_truncation, error_result, matrix_pairs

logger = logging.getLogger(__name__)


def evaluate_metric(
    domain: str,
    z: Sequence[str],
    r: Optional[float] = None,
    factors: Optional[str] = None,
    tol: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Computes T, det T, Ric and the tilde metric (n+1)T - Ric at z.

    Returns:
        Dict with the three tensors as nested [re, im] pairs, det T and the
        pointwise Ricci ratio (smallest generalised eigenvalue of Ric against T)
    """
    try:
        spec = build_domain(domain, r, factors)
        zc = build_point(spec, z)
        sample = tilde_metric(spec, zc, build_truncation(tol))
        ratio = np.linalg.eigvals(np.linalg.solve(sample.T, sample.Ric)).real.min()
        logger.info(f"Metric at {zc} on {spec.describe()}: det T = {sample.g:.6g}")
        return {
            "success": True,
            "domain": spec.describe(),
            "T": matrix_pairs(sample.T),
            "det_T": sample.g,
            "Ric": matrix_pairs(sample.Ric),
            "Ttilde": matrix_pairs(sample.Ttilde),
            "ricci_ratio": float(ratio),
        }

    except Exception as e:
        logger.error(f"Error evaluating metric on {domain}: {e}")
        return error_result(e, domain=domain)
