# tools/common.py

"""Shared argument handling for the tool wrappers."""

import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..core import DomainSpec, Truncation, parse_complex, parse_domain
from ..infra import BERGMAN_BOUNDARY_MARGIN, BERGMAN_MAX_TERMS, BERGMAN_TOL_ABS

logger = logging.getLogger(__name__)

SUGGESTIONS: Dict[str, str] = {
    "NotInDomain": "Points must satisfy r < |z| < 1 (annulus) or |z| < 1 (disk) in every coordinate",
    "NearSingularLocus": "Move the points away from the boundary or raise the boundary margin",
    "SeriesTruncationFailure": "Relax the series tolerance or raise BERGMAN_MAX_TERMS",
    "NoSignChange": "Widen the bracket with --epsilon or use a smaller r",
    "ContourThroughZero": "Shift the search region slightly",
    "KernelZeroAtBasePair": "Choose a base point where K(z, z0) does not vanish",
    "TooLarge": "Use n <= 4 and m <= 9 for minor enumeration",
}


def build_domain(domain: str, r: Optional[float] = None, factors: Optional[str] = None) -> DomainSpec:
    return parse_domain(domain, r, factors)


def build_point(domain: DomainSpec, coords: Sequence[str]) -> np.ndarray:
    """One 'a,b' string per coordinate."""
    if len(coords) != domain.n:
        raise ValueError(f"{domain.describe()} needs {domain.n} coordinate(s), got {len(coords)}")
    return np.array([parse_complex(text) for text in coords], dtype=complex)


def build_truncation(tol: Optional[float] = None) -> Truncation:
    return Truncation(
        tol_abs=BERGMAN_TOL_ABS if tol is None else tol,
        max_terms=BERGMAN_MAX_TERMS,
        boundary_margin=BERGMAN_BOUNDARY_MARGIN,
    )


def complex_pair(value: complex) -> List[float]:
    value = complex(value)
    return [value.real, value.imag]


def matrix_pairs(matrix: np.ndarray) -> List[List[List[float]]]:
    return [[complex_pair(v) for v in row] for row in np.asarray(matrix)]


def error_result(e: Exception, **context: Any) -> Dict[str, Any]:
    name = type(e).__name__
    result = {"success": False, "error": str(e), "error_type": name}
    if name in SUGGESTIONS:
        result["suggestion"] = SUGGESTIONS[name]
    result.update(context)
    return result
