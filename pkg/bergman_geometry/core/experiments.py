# core/experiments.py

"""Reproduction sweeps over the inner radius for the kernel-zero and immersion-failure paths."""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..infra.config import (
    BERGMAN_NODES,
    BERGMAN_QUAD_ORDER,
    BERGMAN_QUAD_TOL,
    DEFAULT_EPSILON,
    DEFAULT_R_GRID,
    OUTPUT_FORMATS,
)
from .domains import DomainSpec, Truncation
from .errors import BergmanError, NoSignChange
from .geodesics import DistanceOptions, distance, comparison_path_thm4, comparison_path_thm5, segment_lengths
from .geometry import skwarczynski_bound, tilde_bound, tilde_metric
from .kernel import check_smallness
from .loci import (
    Rectangle,
    complex_roots_region,
    defect_profile,
    kernel_zero_bisection,
    limiting_defect_root,
    limiting_zero_parameter,
    thm5_defect_function,
    thm5_points,
    thm5_reference_root,
    thm5_scale,
)

logger = logging.getLogger(__name__)

HALF_PI = math.pi / 2.0
BRACKET_GROWTH = 1.5
MAX_BRACKET_HALFWIDTH = 0.5
NAN = float("nan")


@dataclass(frozen=True)
class ExperimentConfig:
    r_grid: Tuple[float, ...] = DEFAULT_R_GRID
    epsilon: float = DEFAULT_EPSILON
    nodes: int = BERGMAN_NODES
    quad_order: int = BERGMAN_QUAD_ORDER
    tol: float = BERGMAN_QUAD_TOL
    trunc: Truncation = field(default_factory=Truncation)
    output_format: str = "csv"
    plot: bool = False
    seed: int = 0
    require_smallness: bool = False
    optimize: bool = True
    workers: int = 1
    include_timing: bool = False
    root_grid: Tuple[int, int] = (4, 4)

    def __post_init__(self):
        object.__setattr__(self, "r_grid", tuple(float(r) for r in self.r_grid))
        if not self.r_grid:
            raise ValueError("r_grid must not be empty")
        bad = [r for r in self.r_grid if not (0.0 < r < 1.0)]
        if bad:
            raise ValueError(f"Every r must lie in (0, 1), got {bad}")
        if not (0.0 < self.epsilon < MAX_BRACKET_HALFWIDTH):
            raise ValueError(f"epsilon must lie in (0, {MAX_BRACKET_HALFWIDTH}), got {self.epsilon}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown format: {self.output_format}. Supported formats: {', '.join(OUTPUT_FORMATS)}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")

    def distance_options(self, extra_seed) -> DistanceOptions:
        return DistanceOptions(
            nodes=self.nodes,
            quad_order=self.quad_order,
            quad_tol=self.tol,
            extra_seeds=(extra_seed,),
            restart_seed=self.seed,
            trunc=self.trunc,
        )


@dataclass
class ExperimentRow:
    """
    One radius of a reproduction sweep.

    root_param is s* for the kernel zero and |xi* - 1| for the defect root;
    param_re/param_im hold s* or xi* themselves. Complex quantities are split into
    real and imaginary columns so every field is a real number or a string.
    """
    theorem: str
    r: float
    z0: float = NAN
    zero_re: float = NAN
    zero_im: float = NAN
    param_re: float = NAN
    param_im: float = NAN
    root_param: float = NAN
    bracket_halfwidth: float = NAN
    root_residual: float = NAN
    root_count: float = NAN
    reference_re: float = NAN
    reference_im: float = NAN
    limit_re: float = NAN
    limit_im: float = NAN
    root_gap: float = NAN
    limit_gap: float = NAN
    len_gamma1: float = NAN
    len_gamma2: float = NAN
    total: float = NAN
    lower_bound: float = NAN
    excess: float = NAN
    optimized_upper: float = NAN
    tilde_ratio: float = NAN
    defect_scale: float = NAN
    smallness_ok: bool = False
    status: str = "ok"
    error: str = ""
    wall_time: float = NAN


def _bracketed_zero(r: float, config: ExperimentConfig):
    halfwidth = config.epsilon
    while True:
        try:
            report = kernel_zero_bisection(r, 1.0, (1.0 - halfwidth, 1.0 + halfwidth), config.trunc)
            return report, halfwidth
        except NoSignChange as e:
            wider = halfwidth * BRACKET_GROWTH
            if wider > MAX_BRACKET_HALFWIDTH:
                raise
            logger.warning(f"r={r:g}: no sign change on [1-{halfwidth:.4g}, 1+{halfwidth:.4g}] "
                           f"(values {e.values}); widening to {wider:.4g}")
            halfwidth = wider


def _thm4_row(r: float, config: ExperimentConfig) -> ExperimentRow:
    domain = DomainSpec.annulus(r)
    z0 = 1.0 / math.sqrt(abs(domain.log_r2))
    row = ExperimentRow(theorem="thm4", r=r, z0=z0)

    report, halfwidth = _bracketed_zero(r, config)
    s_star = float(report.parameter)
    zeta = report.location
    row.zero_re, row.zero_im = zeta.real, zeta.imag
    row.param_re, row.param_im = s_star, 0.0
    row.root_param = s_star
    row.bracket_halfwidth = halfwidth
    row.root_residual = report.residual / report.scale
    row.root_count = 1.0

    try:
        limit = limiting_zero_parameter(r)
        row.limit_re, row.limit_im = limit, 0.0
        row.limit_gap = abs(s_star - limit)
    except ValueError as e:
        logger.info(f"r={r:g}: {e}")

    row.lower_bound = skwarczynski_bound(domain, z0, zeta, config.trunc)
    path = comparison_path_thm4(r, s_star)
    row.len_gamma1, row.len_gamma2 = segment_lengths(
        domain, path, "bergman", config.quad_order, config.tol, config.trunc
    )
    row.total = row.len_gamma1 + row.len_gamma2
    row.excess = row.total - HALF_PI

    if config.optimize:
        result = distance(domain, z0, zeta, "bergman", config.distance_options(path))
        row.optimized_upper = result.upper
    return row


def _thm5_region(r: float, epsilon: float) -> Rectangle:
    halfwidth = min(MAX_BRACKET_HALFWIDTH, max(epsilon, 3.0 / thm5_scale(r)))
    return Rectangle(1.0 - halfwidth, 1.0 + halfwidth, -halfwidth, halfwidth)


def _thm5_row(r: float, config: ExperimentConfig) -> ExperimentRow:
    domain = DomainSpec.annulus(r)
    rho, _ = thm5_points(r, 1.0)
    row = ExperimentRow(theorem="thm5", r=r, z0=rho)

    region = _thm5_region(r, config.epsilon)
    row.bracket_halfwidth = 0.5 * (region.re_max - region.re_min)
    roots = complex_roots_region(thm5_defect_function(r, config.trunc), region, config.root_grid)
    row.root_count = float(len(roots))
    if not roots:
        raise BergmanError(f"No immersion-defect root in {region}")
    if len(roots) > 1:
        logger.warning(f"r={r:g}: {len(roots)} defect roots in {region}, keeping the one nearest 1")
    report = min(roots, key=lambda rep: abs(rep.location - 1.0))
    xi = report.location
    _, z_star = thm5_points(r, xi)
    z_star = complex(z_star)
    row.zero_re, row.zero_im = z_star.real, z_star.imag
    row.param_re, row.param_im = xi.real, xi.imag
    row.root_param = abs(xi - 1.0)
    row.root_residual = report.residual / report.scale

    reference = thm5_reference_root(r)
    row.reference_re, row.reference_im = reference.real, reference.imag
    row.root_gap = abs(xi - reference)
    limit = limiting_defect_root(r)
    row.limit_re, row.limit_im = limit.real, limit.imag
    row.limit_gap = abs(xi - limit)

    sample = tilde_metric(domain, rho, config.trunc)
    row.tilde_ratio = float(sample.Ttilde[0, 0].real) / (math.sqrt(2.0) * math.sqrt(abs(domain.log_r2)))
    row.defect_scale = float(defect_profile(domain, np.asarray([rho * rho]), config.trunc)[0].real) * math.pi ** 2

    row.lower_bound = tilde_bound(domain, rho, z_star, config.trunc)
    path = comparison_path_thm5(r, xi)
    row.len_gamma1, row.len_gamma2 = segment_lengths(
        domain, path, "tilde", config.quad_order, config.tol, config.trunc
    )
    row.total = row.len_gamma1 + row.len_gamma2
    row.excess = row.total - HALF_PI

    if config.optimize:
        result = distance(domain, rho, z_star, "tilde", config.distance_options(path))
        row.optimized_upper = result.upper
    return row


def _run_row(build: Callable[[float, ExperimentConfig], ExperimentRow], theorem: str,
             r: float, config: ExperimentConfig) -> ExperimentRow:
    started = time.perf_counter()
    smallness_ok = check_smallness(r, config.epsilon).all_hold
    if config.require_smallness and not smallness_ok:
        logger.warning(f"{theorem} r={r:g}: smallness conditions fail for eps={config.epsilon}, skipped")
        return ExperimentRow(theorem=theorem, r=r, smallness_ok=False, status="skipped",
                             error=f"smallness conditions fail for eps={config.epsilon}",
                             wall_time=time.perf_counter() - started)
    logger.info(f"{theorem} r={r:g}: started")
    try:
        row = build(r, config)
    except (BergmanError, ValueError, ArithmeticError, RuntimeError) as e:
        logger.warning(f"{theorem} r={r:g}: failed with {type(e).__name__}: {e}")
        row = ExperimentRow(theorem=theorem, r=r, status="failed", error=f"{type(e).__name__}: {e}")
    row.smallness_ok = smallness_ok
    row.wall_time = time.perf_counter() - started
    logger.info(f"{theorem} r={r:g}: {row.status}, excess {row.excess:.6g}, {row.wall_time:.2f}s")
    return row


def _run_table(build, theorem: str, config: ExperimentConfig) -> List[ExperimentRow]:
    def one(r: float) -> ExperimentRow:
        return _run_row(build, theorem, r, config)

    if config.workers == 1:
        rows = [one(r) for r in config.r_grid]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(one, config.r_grid))
    failed = sum(row.status != "ok" for row in rows)
    if failed:
        logger.warning(f"{theorem}: {failed} of {len(rows)} rows skipped or failed")
    return rows


def run_thm4_table(config: Optional[ExperimentConfig] = None) -> List[ExperimentRow]:
    """
    Distance from z0 = 1/sqrt|log r^2| to the nearest kernel zero, per radius.

    Each row brackets the zero of K(z0, .) on the negative axis, measures the
    segment-plus-half-circle path through it, and records the arccos lower bound
    (pi/2 at a zero) and the path excess over pi/2. Rows fail independently.
    """
    return _run_table(_thm4_row, "thm4", config or ExperimentConfig())


def run_thm5_table(config: Optional[ExperimentConfig] = None) -> List[ExperimentRow]:
    """
    Tilde distance from zeta0 = (2|log r^2|)^(-1/4) to a point where the
    representative coordinates fail to be an immersion, per radius.
    """
    return _run_table(_thm5_row, "thm5", config or ExperimentConfig())


def excess_decreasing(rows: Sequence[ExperimentRow]) -> bool:
    """True when every row succeeded and the excess is positive and strictly decreasing."""
    if any(row.status != "ok" for row in rows):
        return False
    excess = [row.excess for row in rows]
    return all(e > 0 for e in excess) and all(a > b for a, b in zip(excess, excess[1:]))


def with_overrides(config: ExperimentConfig, **overrides) -> ExperimentConfig:
    """Copy of config with every non-None override applied."""
    return replace(config, **{k: v for k, v in overrides.items() if v is not None})
