# tools/kernel_tool.py

"""Kernel Tool - Bergman kernel jets and the arccos distance bounds at a pair of points."""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core import eval_kernel_jet, skwarczynski_bound, tilde_bound
from .common import build_domain, build_point, build_truncation, complex_pair, error_result

logger = logging.getLogger(__name__)


def evaluate_kernel(
    domain: str,
    z: Sequence[str],
    zeta: Sequence[str],
    r: Optional[float] = None,
    factors: Optional[str] = None,
    orders: Tuple[int, int] = (0, 0),
    tol: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Evaluates K(z, zeta) and its mixed jets.

    Args:
        domain: 'disk', 'annulus' or 'product'
        z, zeta: one 'a,b' string per coordinate
        r: annulus inner radius
        factors: product factor list, e.g. 'annulus:1e-8,disk'
        orders: highest z and conj(zeta) derivative order per coordinate
        tol: absolute series tolerance

    Returns:
        Dict with the kernel value, per-coordinate jet tables, the certified tail
        bound and both arccos lower bounds
    """
    try:
        spec = build_domain(domain, r, factors)
        zc = build_point(spec, z)
        wc = build_point(spec, zeta)
        trunc = build_truncation(tol)
        logger.info(f"Kernel jet of order {orders} on {spec.describe()}")

        jet = eval_kernel_jet(spec, zc, wc, tuple(orders), trunc)
        tables: List[List[List[List[float]]]] = [
            [[complex_pair(v) for v in row] for row in table] for table in jet.tables
        ]
        result = {
            "success": True,
            "domain": spec.describe(),
            "z": [complex_pair(c) for c in zc],
            "zeta": [complex_pair(c) for c in wc],
            "kernel": complex_pair(jet.value),
            "jet_tables": tables,
            "tail_bound": jet.tail_bound,
            "terms_used": [c.terms_used for c in jet.certificates],
            "skwarczynski_bound": skwarczynski_bound(spec, zc, wc, trunc),
        }
        try:
            result["tilde_bound"] = tilde_bound(spec, zc, wc, trunc)
        except ArithmeticError as e:
            logger.warning(f"Tilde bound unavailable: {e}")
            result["tilde_bound"] = None
        return result

    except Exception as e:
        logger.error(f"Error evaluating kernel on {domain}: {e}")
        return error_result(e, domain=domain)
