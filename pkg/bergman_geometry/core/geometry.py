# core/geometry.py

"""Bergman metric, Ricci curvature, the tilde metric and the arccos distance bounds."""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .domains import DomainSpec, PointLike, Truncation, admissible_mask, as_coords
from .errors import NonPositiveMetric, NotInDomain
from .kernel import KernelJet, eval_kernel_jet
from .radial import bergman_profile, curvature_profile

logger = logging.getLogger(__name__)

METRIC_KINDS = ("bergman", "tilde")
ARCCOS_FLOOR = 1e-300


@dataclass(frozen=True)
class MetricSample:
    z: Tuple[complex, ...]
    T: np.ndarray
    g: float
    Ric: Optional[np.ndarray] = None
    Ttilde: Optional[np.ndarray] = None


@dataclass(frozen=True)
class SamplingBox:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def grid(self, shape: Tuple[int, int]) -> np.ndarray:
        nx, ny = shape
        xs = np.linspace(self.re_min, self.re_max, nx)
        ys = np.linspace(self.im_min, self.im_max, ny)
        return (xs[:, None] + 1j * ys[None, :]).ravel()


def check_metric_kind(kind: str) -> None:
    if kind not in METRIC_KINDS:
        raise ValueError(f"Unknown metric kind: {kind}. Supported kinds: {', '.join(METRIC_KINDS)}")


def log_hessian(jet: KernelJet) -> np.ndarray:
    """K^2 d_i dbar_j log K at the jet's pair of points."""
    n = jet.domain.n
    k = jet.value
    out = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[i, j] = k * jet.unit(i, j) - jet.unit(i, None) * jet.unit(None, j)
    return out


def _factor_curvature(table: np.ndarray) -> Tuple[float, float]:
    """(T, Lambda = d dbar log T) of a one-dimensional diagonal jet table."""
    k = table
    d = k[0, 0] * k[1, 1] - k[1, 0] * k[0, 1]
    d_1 = k[0, 0] * k[2, 1] - k[2, 0] * k[0, 1]
    d_1bar = k[0, 0] * k[1, 2] - k[1, 0] * k[0, 2]
    d_11bar = k[0, 0] * k[2, 2] - k[2, 0] * k[0, 2]
    metric = (d / k[0, 0] ** 2).real
    log_d = (d_11bar / d - d_1 * d_1bar / d ** 2).real
    return metric, log_d - 2.0 * metric


def _require_positive(matrix: np.ndarray, z, label: str) -> float:
    eigenvalues = np.linalg.eigvalsh(matrix)
    if eigenvalues.min() <= 0.0:
        raise NonPositiveMetric(f"{label} at {z} has eigenvalue {eigenvalues.min():.3e}")
    return float(np.prod(eigenvalues))


def _sample(domain: DomainSpec, z: PointLike, trunc: Truncation, curvature: bool) -> MetricSample:
    coords = as_coords(domain, z)
    jet = eval_kernel_jet(domain, coords, coords, (2, 2) if curvature else (1, 1), trunc)
    metric = log_hessian(jet) / jet.value ** 2
    metric = 0.5 * (metric + metric.conj().T)
    det = _require_positive(metric, coords, "Bergman metric")
    if not curvature:
        return MetricSample(z=tuple(coords), T=metric, g=det)

    n = domain.n
    lam = np.array([_factor_curvature(table)[1] for table in jet.tables])
    ricci = np.diag(-lam).astype(complex)
    tilde = (n + 1) * metric - ricci
    _require_positive(tilde, coords, "tilde metric")
    return MetricSample(z=tuple(coords), T=metric, g=det, Ric=ricci, Ttilde=tilde)


def bergman_metric(domain: DomainSpec, z: PointLike, trunc: Truncation = Truncation()) -> MetricSample:
    return _sample(domain, z, trunc, curvature=False)


def ricci_tensor(domain: DomainSpec, z: PointLike, trunc: Truncation = Truncation()) -> MetricSample:
    """
    Metric and Ricci curvature -d dbar log g.

    Model-domain metrics are diagonal in product coordinates, so Ric is assembled
    factor by factor from each factor's second-order jets.
    """
    return _sample(domain, z, trunc, curvature=True)


def tilde_metric(domain: DomainSpec, z: PointLike, trunc: Truncation = Truncation()) -> MetricSample:
    sample = _sample(domain, z, trunc, curvature=True)
    if domain.n == 1:
        jet = eval_kernel_jet(domain, sample.z, sample.z, (2, 2), trunc)
        direct = tilde_from_jets(jet)
        assembled = float(sample.Ttilde[0, 0].real)
        if abs(direct - assembled) > 1e-8 * abs(assembled):
            logger.warning(f"Tilde metric routes disagree at {sample.z}: {assembled!r} vs {direct!r}")
    return sample


def tilde_from_jets(jet: KernelJet) -> float:
    """
    One-dimensional tilde density d dbar log D expanded in kernel jets.

    D = K K_11bar - K_1 K_1bar; subscripts 1 and 1bar are z and conj(zeta)
    derivatives taken on the diagonal.
    """
    if jet.domain.n != 1:
        raise ValueError("tilde_from_jets is the one-dimensional assembly")
    (k,) = jet.tables
    k0, k1, k1b, k11b = k[0, 0], k[1, 0], k[0, 1], k[1, 1]
    k11, k1b1b = k[2, 0], k[0, 2]
    k111b, k11b1b, k111b1b = k[2, 1], k[1, 2], k[2, 2]
    d = k0 * k11b - k1 * k1b
    value = (
        -k1 * k1b * k11 * k1b1b / d ** 2
        - k11 * k1b1b / d
        + k0 * k1b * k11b1b * k11 / d ** 2
        + k0 * k1 * k111b * k1b1b / d ** 2
        - k0 ** 2 * k11b1b * k111b / d ** 2
        + k0 * k111b1b / d
    )
    return float(value.real)


def vector_length(sample: MetricSample, X: Sequence[complex], kind: str = "bergman") -> float:
    check_metric_kind(kind)
    vec = np.asarray(X, dtype=complex)
    matrix = sample.T if kind == "bergman" else sample.Ttilde
    if matrix is None:
        raise ValueError("Sample carries no tilde metric; build it with tilde_metric")
    return math.sqrt(max(0.0, float(np.real(vec @ matrix @ vec.conj()))))


def _clamped_arccos(ratio: float, label: str) -> float:
    clipped = min(1.0, max(ARCCOS_FLOOR, ratio))
    if clipped != ratio:
        logger.debug(f"{label}: arccos argument {ratio!r} clamped to {clipped!r}")
    return math.acos(clipped)


def skwarczynski_bound(domain: DomainSpec, z: PointLike, zeta: PointLike,
                       trunc: Truncation = Truncation()) -> float:
    zc = as_coords(domain, z)
    wc = as_coords(domain, zeta)
    cross = eval_kernel_jet(domain, zc, wc, (0, 0), trunc).value
    kzz = eval_kernel_jet(domain, zc, zc, (0, 0), trunc).value.real
    kww = eval_kernel_jet(domain, wc, wc, (0, 0), trunc).value.real
    return _clamped_arccos(abs(cross) / math.sqrt(kzz * kww), "skwarczynski_bound")


def tilde_bound(domain: DomainSpec, z: PointLike, zeta: PointLike,
                trunc: Truncation = Truncation()) -> float:
    zc = as_coords(domain, z)
    wc = as_coords(domain, zeta)
    numerator = abs(np.linalg.det(log_hessian(eval_kernel_jet(domain, zc, wc, (1, 1), trunc))))
    dz = np.linalg.det(log_hessian(eval_kernel_jet(domain, zc, zc, (1, 1), trunc))).real
    dw = np.linalg.det(log_hessian(eval_kernel_jet(domain, wc, wc, (1, 1), trunc))).real
    if dz <= 0.0 or dw <= 0.0:
        raise NonPositiveMetric(f"Non-positive diagonal determinant: {dz:.3e}, {dw:.3e}")
    return _clamped_arccos(numerator / math.sqrt(dz * dw), "tilde_bound")


def _region_points(domain: DomainSpec, region, grid: Tuple[int, int]) -> np.ndarray:
    boxes = [region] * domain.n if isinstance(region, SamplingBox) else list(region)
    if len(boxes) != domain.n:
        raise ValueError(f"Need {domain.n} sampling boxes, got {len(boxes)}")
    axes = [box.grid(grid) for box in boxes]
    points = np.array(list(itertools.product(*axes)), dtype=complex).reshape(-1, domain.n)
    bad = ~admissible_mask(domain, points)
    if bad.any():
        raise NotInDomain(f"{int(bad.sum())} grid points fall outside {domain.describe()}, "
                          f"first {points[bad][0]}")
    return points


def ricci_ratio_min(domain: DomainSpec, region, grid: Tuple[int, int] = (9, 9),
                    trunc: Truncation = Truncation()) -> float:
    """
    Grid minimum of the generalised Rayleigh quotient Ric/T over a sampling box.

    Args:
        domain: model domain
        region: a SamplingBox (used for every coordinate) or one box per coordinate
        grid: points per box along the real and imaginary axes

    Returns:
        estimate of the largest c with Ric >= c T on the region
    """
    points = _region_points(domain, region, grid)
    lowest = math.inf
    for z in points:
        sample = ricci_tensor(domain, z, trunc)
        eigenvalues = linalg.eigh(sample.Ric, sample.T, eigvals_only=True)
        lowest = min(lowest, float(eigenvalues.min()))
    logger.info(f"Ricci ratio on {domain.describe()}: min {lowest:.6g} over {len(points)} points "
                f"(grid {grid[0]}x{grid[1]} per coordinate)")
    return lowest


def guaranteed_radii(domain: DomainSpec, region, grid: Tuple[int, int] = (9, 9),
                     trunc: Truncation = Truncation()) -> Tuple[float, float]:
    """Kernel-nonvanishing radius pi/2 and immersion radius pi/(2 sqrt(n+1-c))."""
    c = ricci_ratio_min(domain, region, grid, trunc)
    gap = domain.n + 1 - c
    if gap <= 0.0:
        raise NonPositiveMetric(f"n + 1 - c = {gap:.3e} is not positive")
    return math.pi / 2.0, math.pi / (2.0 * math.sqrt(gap))


def metric_weights(
    domain: DomainSpec,
    points: np.ndarray,
    kind: str = "bergman",
    trunc: Truncation = Truncation(),
    gradient: bool = False,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Diagonal metric weights at an (N, n) array of points.

    Returns:
        (W, dW/dx), each (N, n): W[:, k] is the density of coordinate k at
        x = |z_k|^2. The derivative is None unless gradient=True.
    """
    check_metric_kind(kind)
    points = np.asarray(points, dtype=complex).reshape(-1, domain.n)
    bad = ~admissible_mask(domain, points)
    if bad.any():
        raise NotInDomain(f"Point {points[bad][0]} is not in {domain.describe()}")
    n = domain.n
    weights = np.empty(points.shape)
    slopes = np.empty(points.shape) if gradient else None
    for k, factor in enumerate(domain.factor_list):
        x = np.abs(points[:, k]) ** 2
        if kind == "bergman":
            metric, d_metric = bergman_profile(factor, x, trunc, gradient)
            weights[:, k] = metric
            if gradient:
                slopes[:, k] = d_metric
        else:
            metric, lam, d_metric, d_lam = curvature_profile(factor, x, trunc, gradient)
            weights[:, k] = (n + 1) * metric + lam
            if gradient:
                slopes[:, k] = (n + 1) * d_metric + d_lam
    if np.any(weights <= 0.0):
        raise NonPositiveMetric(f"Non-positive {kind} density on {domain.describe()}")
    return weights, slopes
