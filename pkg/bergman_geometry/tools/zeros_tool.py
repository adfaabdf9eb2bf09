# tools/zeros_tool.py

"""Zeros Tool - kernel zero and immersion-defect roots of a thin annulus."""

import logging
from typing import Any, Dict, Optional

from ..core import (
    Rectangle,
    check_smallness,
    complex_roots_region,
    kernel_zero_bisection,
    limiting_defect_root,
    sign_bracket_bounds,
    thm5_defect_function,
    thm5_reference_root,
)
from ..infra import DEFAULT_EPSILON
from .common import build_truncation, complex_pair, error_result

logger = logging.getLogger(__name__)


def locate_zeros(r: float, epsilon: float = DEFAULT_EPSILON, tol: Optional[float] = None) -> Dict[str, Any]:
    """
    Finds the kernel zero near -1/sqrt|log r^2| and the immersion-defect roots near xi = 1.

    The kernel zero comes from a sign bracket of half-width epsilon in s. The
    defect roots come from the argument principle on the square of half-width
    epsilon around xi = 1 and are compared with the closed-form reference root.

    Returns:
        Dict with a 'kernel_zero' block and a 'defect_roots' block; either block
        carries an 'error' entry instead when its search fails. 'partial' is set on
        either failure and when the square holds no defect root
    """
    try:
        trunc = build_truncation(tol)
        smallness = check_smallness(r, epsilon)
        upper, lower = sign_bracket_bounds(epsilon)
        result: Dict[str, Any] = {
            "success": True,
            "r": r,
            "epsilon": epsilon,
            "smallness": {"eq1": smallness.eq1, "eq2": smallness.eq2, "eq3": smallness.eq3},
            "sign_bounds": {"upper_at_plus": upper, "lower_at_minus": lower},
        }

        try:
            report = kernel_zero_bisection(r, 1.0, (1.0 - epsilon, 1.0 + epsilon), trunc)
            result["kernel_zero"] = {
                "s": report.parameter,
                "location": complex_pair(report.location),
                "residual": report.residual,
                "scale": report.scale,
                "bracket_values": list(report.evidence.values),
            }
        except Exception as e:
            logger.warning(f"Kernel zero search failed for r={r:g}: {e}")
            result["kernel_zero"] = {"error": str(e), "error_type": type(e).__name__}

        try:
            region = Rectangle(1.0 - epsilon, 1.0 + epsilon, -epsilon, epsilon)
            roots = complex_roots_region(thm5_defect_function(r, trunc), region)
            limit = limiting_defect_root(r)
            result["defect_roots"] = {
                "roots": [complex_pair(rep.location) for rep in roots],
                "residuals": [rep.residual for rep in roots],
                "reference": complex_pair(thm5_reference_root(r)),
                "limit": complex_pair(limit),
            }
            if not roots:
                note = (f"No defect root in {region}; the limiting root lies {abs(limit - 1.0):.3g} "
                        f"from 1, widen with a larger epsilon")
                logger.warning(f"r={r:g}: {note}")
                result["defect_roots"]["note"] = note
        except Exception as e:
            logger.warning(f"Defect root search failed for r={r:g}: {e}")
            result["defect_roots"] = {"error": str(e), "error_type": type(e).__name__}

        result["partial"] = (
            "error" in result["kernel_zero"]
            or "error" in result["defect_roots"]
            or not result["defect_roots"]["roots"]
        )
        return result

    except Exception as e:
        logger.error(f"Error locating zeros for r={r}: {e}")
        return error_result(e, r=r)
