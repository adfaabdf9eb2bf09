# tools/repcoord_tool.py

"""Representative Coordinates Tool."""

import logging
from typing import Any, Dict, Optional, Sequence

from ..core import immersion_defect, representative_coordinates
from .common import build_domain, build_point, build_truncation, complex_pair, error_result, matrix_pairs

logger = logging.getLogger(__name__)


def compute_representative_coordinates(
    domain: str,
    z0: Sequence[str],
    z: Sequence[str],
    r: Optional[float] = None,
    factors: Optional[str] = None,
    tol: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Representative coordinates of z with base point z0, their Jacobian and the immersion defect.

    Returns:
        Dict with w, the Jacobian, its determinant and the defect determinant
    """
    try:
        spec = build_domain(domain, r, factors)
        base = build_point(spec, z0)
        point = build_point(spec, z)
        trunc = build_truncation(tol)
        rep = representative_coordinates(spec, base, point, trunc)
        defect = immersion_defect(spec, base, point, trunc)
        return {
            "success": True,
            "domain": spec.describe(),
            "w": [complex_pair(c) for c in rep.w],
            "jacobian": matrix_pairs(rep.jacobian),
            "jac_det": complex_pair(rep.jac_det),
            "immersion_defect": complex_pair(defect),
        }

    except Exception as e:
        logger.error(f"Error computing representative coordinates on {domain}: {e}")
        return error_result(e, domain=domain)
