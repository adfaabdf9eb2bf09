# infra/__init__.py

from .config import (
    BERGMAN_TOL_ABS,
    BERGMAN_MAX_TERMS,
    BERGMAN_BOUNDARY_MARGIN,
    BERGMAN_NODES,
    BERGMAN_QUAD_ORDER,
    BERGMAN_QUAD_TOL,
    DEFAULT_R_GRID,
    DEFAULT_EPSILON,
    DOMAIN_KIND_MAPPING,
    OUTPUT_FORMATS,
    load_config_file
)
from .report_writer import emit_report, rows_to_frame

__all__ = [
    'BERGMAN_TOL_ABS',
    'BERGMAN_MAX_TERMS',
    'BERGMAN_BOUNDARY_MARGIN',
    'BERGMAN_NODES',
    'BERGMAN_QUAD_ORDER',
    'BERGMAN_QUAD_TOL',
    'DEFAULT_R_GRID',
    'DEFAULT_EPSILON',
    'DOMAIN_KIND_MAPPING',
    'OUTPUT_FORMATS',
    'load_config_file',
    'emit_report',
    'rows_to_frame'
]
