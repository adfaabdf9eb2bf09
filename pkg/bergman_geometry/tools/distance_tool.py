# tools/distance_tool.py

"""Distance Tool - lower and upper bounds on the geodesic distance between two points."""

import logging
from typing import Any, Dict, Optional, Sequence

from ..core import DistanceOptions, distance
from ..infra import BERGMAN_NODES, BERGMAN_QUAD_ORDER, BERGMAN_QUAD_TOL
from .common import build_domain, build_point, build_truncation, complex_pair, error_result

logger = logging.getLogger(__name__)


def estimate_distance(
    domain: str,
    z: Sequence[str],
    zeta: Sequence[str],
    r: Optional[float] = None,
    factors: Optional[str] = None,
    metric: str = "bergman",
    tol: Optional[float] = None,
    nodes: int = BERGMAN_NODES,
) -> Dict[str, Any]:
    """
    Brackets the Bergman or tilde distance between z and zeta.

    The lower bound is the arccos bound of the metric; the upper bound is the
    shortest measured path among explicit seeds and optimised polylines.

    Returns:
        Dict with lower, upper, seed and optimised lengths, iteration count and a
        coarse sample of the best path
    """
    try:
        spec = build_domain(domain, r, factors)
        zc = build_point(spec, z)
        wc = build_point(spec, zeta)
        options = DistanceOptions(
            nodes=nodes,
            quad_order=BERGMAN_QUAD_ORDER,
            quad_tol=BERGMAN_QUAD_TOL,
            trunc=build_truncation(tol),
        )
        result = distance(spec, zc, wc, metric, options)
        logger.info(f"{metric} distance on {spec.describe()}: [{result.lower:.10g}, {result.upper:.10g}]")
        return {
            "success": True,
            "domain": spec.describe(),
            "metric": metric,
            "lower": result.lower,
            "upper": result.upper,
            "seed_upper": result.seed_upper,
            "optimized_upper": result.optimized_upper,
            "iterations": result.iterations,
            "converged": result.converged,
            "path_sample": [[complex_pair(c) for c in p] for p in result.path.sample(9)],
        }

    except Exception as e:
        logger.error(f"Error estimating {metric} distance on {domain}: {e}")
        return error_result(e, domain=domain, metric=metric)
