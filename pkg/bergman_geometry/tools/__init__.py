# tools/__init__.py

"""Tools package for Bergman Geometry."""

from .kernel_tool import evaluate_kernel
from .metric_tool import evaluate_metric
from .distance_tool import estimate_distance
from .zeros_tool import locate_zeros
from .repcoord_tool import compute_representative_coordinates
from .reproduce_tool import reproduce_table
from .grassmann_tool import check_grassmann

__all__ = [
    'evaluate_kernel',
    'evaluate_metric',
    'estimate_distance',
    'locate_zeros',
    'compute_representative_coordinates',
    'reproduce_table',
    'check_grassmann'
]
