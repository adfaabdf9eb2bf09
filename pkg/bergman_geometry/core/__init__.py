# core/__init__.py

from .errors import (
    BergmanError,
    NotInDomain,
    SeriesTruncationFailure,
    NearSingularLocus,
    NonPositiveMetric,
    QuadratureNotConverged,
    OptimizerNotConverged,
    KernelZeroAtBasePair,
    NoSignChange,
    ContourThroughZero,
    NewtonDiverged,
    BranchAmbiguity,
    NotOnZeroSet,
    TooLarge,
    IoFailure
)
from .domains import (
    DomainKind,
    DomainSpec,
    Truncation,
    Point,
    as_coords,
    admissible_point,
    admissible_mask,
    require_admissible,
    parse_domain,
    parse_complex
)
from .kernel import (
    KernelJet,
    SeriesCertificate,
    SmallnessReport,
    series_derivatives,
    laurent_kernel_oracle,
    eval_kernel_jet,
    check_smallness,
    sign_bracket_bounds
)
from .radial import bergman_profile, curvature_profile, tilde_profile_direct
from .geometry import (
    MetricSample,
    SamplingBox,
    bergman_metric,
    ricci_tensor,
    tilde_metric,
    tilde_from_jets,
    vector_length,
    skwarczynski_bound,
    tilde_bound,
    ricci_ratio_min,
    guaranteed_radii,
    metric_weights
)
from .paths import LinearSegment, CircularArc, Polyline, ParamPath, path_length
from .geodesics import (
    DistanceOptions,
    DistanceResult,
    distance,
    comparison_path_thm4,
    comparison_path_thm5,
    gamma1_length_limit,
    segment_lengths
)
from .loci import (
    Rectangle,
    RootReport,
    RepCoordResult,
    representative_coordinates,
    rep_jacobian_det,
    immersion_defect,
    kernel_zero_bisection,
    complex_roots_region,
    thm5_defect_function,
    defect_profile,
    defect_split,
    thm5_scale,
    thm5_reference_root,
    rank1_inclusion_check,
    limiting_zero_parameter,
    limiting_defect_root
)
from .grassmann import (
    MatrixSample,
    random_sample,
    grassmann_inverse_identity,
    cauchy_binet_check,
    fs_pullback_fd_check,
    plucker_distance
)
from .experiments import (
    ExperimentConfig,
    ExperimentRow,
    run_thm4_table,
    run_thm5_table,
    excess_decreasing,
    with_overrides
)

__all__ = [
    'BergmanError',
    'NotInDomain',
    'SeriesTruncationFailure',
    'NearSingularLocus',
    'NonPositiveMetric',
    'QuadratureNotConverged',
    'OptimizerNotConverged',
    'KernelZeroAtBasePair',
    'NoSignChange',
    'ContourThroughZero',
    'NewtonDiverged',
    'BranchAmbiguity',
    'NotOnZeroSet',
    'TooLarge',
    'IoFailure',
    'DomainKind',
    'DomainSpec',
    'Truncation',
    'Point',
    'as_coords',
    'admissible_point',
    'admissible_mask',
    'require_admissible',
    'parse_domain',
    'parse_complex',
    'KernelJet',
    'SeriesCertificate',
    'SmallnessReport',
    'series_derivatives',
    'laurent_kernel_oracle',
    'eval_kernel_jet',
    'check_smallness',
    'sign_bracket_bounds',
    'bergman_profile',
    'curvature_profile',
    'tilde_profile_direct',
    'MetricSample',
    'SamplingBox',
    'bergman_metric',
    'ricci_tensor',
    'tilde_metric',
    'tilde_from_jets',
    'vector_length',
    'skwarczynski_bound',
    'tilde_bound',
    'ricci_ratio_min',
    'guaranteed_radii',
    'metric_weights',
    'LinearSegment',
    'CircularArc',
    'Polyline',
    'ParamPath',
    'path_length',
    'DistanceOptions',
    'DistanceResult',
    'distance',
    'comparison_path_thm4',
    'comparison_path_thm5',
    'gamma1_length_limit',
    'segment_lengths',
    'Rectangle',
    'RootReport',
    'RepCoordResult',
    'representative_coordinates',
    'rep_jacobian_det',
    'immersion_defect',
    'kernel_zero_bisection',
    'complex_roots_region',
    'thm5_defect_function',
    'defect_profile',
    'defect_split',
    'thm5_scale',
    'thm5_reference_root',
    'rank1_inclusion_check',
    'limiting_zero_parameter',
    'limiting_defect_root',
    'MatrixSample',
    'random_sample',
    'grassmann_inverse_identity',
    'cauchy_binet_check',
    'fs_pullback_fd_check',
    'plucker_distance',
    'ExperimentConfig',
    'ExperimentRow',
    'run_thm4_table',
    'run_thm5_table',
    'excess_decreasing',
    'with_overrides'
]
