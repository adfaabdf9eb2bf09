# core/loci.py

"""Kernel zero sets, immersion-defect roots and representative coordinates."""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from .domains import DomainKind, DomainSpec, PointLike, Truncation, as_coords, require_admissible
from .errors import (
    BranchAmbiguity,
    ContourThroughZero,
    KernelZeroAtBasePair,
    NewtonDiverged,
    NoSignChange,
    NotOnZeroSet,
)
from .geometry import log_hessian
from .kernel import check_smallness, eval_kernel_jet, series_derivatives

logger = logging.getLogger(__name__)

BRACKET_REALNESS = 1e-14


@dataclass(frozen=True)
class SignBracket:
    interval: Tuple[float, float]
    values: Tuple[float, float]


@dataclass(frozen=True)
class Rectangle:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError(f"Degenerate rectangle {self}")

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    @property
    def size(self) -> float:
        return max(self.re_max - self.re_min, self.im_max - self.im_min)

    def contains(self, xi: complex, slack: float = 0.0) -> bool:
        return (self.re_min - slack <= xi.real <= self.re_max + slack
                and self.im_min - slack <= xi.imag <= self.im_max + slack)

    def contour(self, per_side: int) -> Tuple[np.ndarray, np.ndarray]:
        """Counter-clockwise boundary nodes and trapezoid weights dxi."""
        t = np.arange(per_side) / per_side
        corners = [
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        ]
        nodes, weights = [], []
        for a, b in zip(corners, corners[1:] + corners[:1]):
            nodes.append(a + t * (b - a))
            weights.append(np.full(per_side, (b - a) / per_side))
        return np.concatenate(nodes), np.concatenate(weights)

    def split(self, nx: int, ny: int) -> List["Rectangle"]:
        xs = np.linspace(self.re_min, self.re_max, nx + 1)
        ys = np.linspace(self.im_min, self.im_max, ny + 1)
        return [Rectangle(xs[i], xs[i + 1], ys[j], ys[j + 1]) for i in range(nx) for j in range(ny)]


@dataclass(frozen=True)
class Winding:
    contour: Rectangle
    count: int


@dataclass(frozen=True)
class NewtonTrace:
    start: complex
    iterations: int
    last_step: float


@dataclass(frozen=True)
class RootReport:
    location: complex
    residual: float
    evidence: Union[SignBracket, Winding, NewtonTrace]
    scale: float = 1.0
    parameter: Optional[float] = None
    refinement: Optional[NewtonTrace] = None


@dataclass(frozen=True)
class RepCoordResult:
    z0: Tuple[complex, ...]
    z: Tuple[complex, ...]
    w: np.ndarray
    jac_det: complex
    jacobian: np.ndarray
    T_inv_at_z0: np.ndarray


def _check_base_pair(jet, label: str, trunc: Truncation) -> None:
    kzz = eval_kernel_jet(jet.domain, jet.z, jet.z, (0, 0), trunc).value.real
    kww = eval_kernel_jet(jet.domain, jet.zeta, jet.zeta, (0, 0), trunc).value.real
    if abs(jet.value) <= 1e-13 * math.sqrt(kzz * kww):
        raise KernelZeroAtBasePair(f"{label}: K(z, z0) vanishes at z={jet.z}, z0={jet.zeta}")


def representative_coordinates(domain: DomainSpec, z0: PointLike, z: PointLike,
                               trunc: Truncation = Truncation()) -> RepCoordResult:
    """
    Bergman representative coordinates of z with respect to the base point z0.

    w_i = sum_j T^{j i}(z0) [d_conj(zeta_j) log K(z, zeta) - d_conj(zeta_j) log K(zeta, zeta)] at zeta = z0
    """
    base = require_admissible(domain, z0, "z0")
    point = require_admissible(domain, z, "z")
    n = domain.n

    base_jet = eval_kernel_jet(domain, base, base, (1, 1), trunc)
    metric = log_hessian(base_jet) / base_jet.value ** 2
    metric_inv = np.linalg.inv(metric)

    jet = eval_kernel_jet(domain, point, base, (1, 1), trunc)
    _check_base_pair(jet, "representative_coordinates", trunc)
    v = np.array([jet.unit(None, j) / jet.value - base_jet.unit(None, j) / base_jet.value for j in range(n)])
    w = metric_inv.T @ v

    mixed = log_hessian(jet) / jet.value ** 2
    jacobian = metric_inv.T @ mixed.T
    return RepCoordResult(
        z0=tuple(base),
        z=tuple(point),
        w=w,
        jac_det=complex(np.linalg.det(mixed)),
        jacobian=jacobian,
        T_inv_at_z0=metric_inv,
    )


def rep_jacobian_det(domain: DomainSpec, z0: PointLike, z: PointLike,
                     trunc: Truncation = Truncation()) -> complex:
    """det(d_i dbar_j log K(z, zeta)) at zeta = z0; equals det T(z0) when z = z0."""
    jet = eval_kernel_jet(domain, as_coords(domain, z), as_coords(domain, z0), (1, 1), trunc)
    _check_base_pair(jet, "rep_jacobian_det", trunc)
    return complex(np.linalg.det(log_hessian(jet) / jet.value ** 2))


def immersion_defect(domain: DomainSpec, z0: PointLike, z: PointLike,
                     trunc: Truncation = Truncation()) -> complex:
    """det(K(z, z0) K_{i jbar}(z, z0) - K_i(z, z0) K_jbar(z, z0)); in one variable K K_11bar - K_1 K_1bar."""
    jet = eval_kernel_jet(domain, z, z0, (1, 1), trunc)
    return complex(np.linalg.det(log_hessian(jet)))


def defect_profile(factor: DomainSpec, t, trunc: Truncation = Truncation()) -> np.ndarray:
    """One-dimensional immersion defect as a function of t = z conj(z0), vectorised."""
    derivs, _ = series_derivatives(factor, np.asarray(t, dtype=complex), 2, trunc)
    f, df, ddf = derivs
    return f * (df + t * ddf) - t * df ** 2


def _thm4_points(r: float, s, z0_scale: float) -> Tuple[float, np.ndarray]:
    big_l = abs(2.0 * math.log(r))
    z0 = 1.0 / (z0_scale * math.sqrt(big_l))
    return z0, -z0 / np.asarray(s, dtype=float)


def kernel_zero_bisection(
    r: float,
    z0_scale: float = 1.0,
    s_range: Tuple[float, float] = (0.95, 1.05),
    trunc: Truncation = Truncation(),
    xtol: float = 1e-15,
) -> RootReport:
    """
    Zero of zeta -> K(z0, zeta) on the negative real axis.

    z0 = 1/(c sqrt L) and zeta(s) = -z0/s with L = |log r^2| and c = z0_scale; the
    kernel is real there, so the zero is bracketed by a sign change in s.

    Args:
        r: annulus inner radius
        z0_scale: c above (1 reproduces the base point 1/sqrt L)
        s_range: bracket [s_lo, s_hi]

    Returns:
        RootReport with location zeta* and parameter s*
    """
    domain = DomainSpec.annulus(r)
    s_lo, s_hi = s_range
    if not (0.0 < s_lo < s_hi):
        raise ValueError(f"s_range must satisfy 0 < s_lo < s_hi, got {s_range}")
    z0, ends = _thm4_points(r, [s_lo, s_hi], z0_scale)
    require_admissible(domain, z0, "z0")
    for end in ends:
        require_admissible(domain, end, "bracket end")
    epsilon = max(1.0 - s_lo, s_hi - 1.0)
    if 0.0 < epsilon < 1.0 and not check_smallness(r, epsilon).all_hold:
        logger.debug(f"Smallness conditions fail for r={r:g}, eps={epsilon:.3g}")

    def kernel_at(s: float) -> float:
        zeta = z0 / -s
        t = np.asarray(z0 * zeta, dtype=complex)
        value = complex(series_derivatives(domain, t, 0, trunc)[0][0])
        if abs(value.imag) > BRACKET_REALNESS * max(1.0, abs(value.real)):
            raise ValueError(f"Kernel is not real along the bracket: {value}")
        return value.real

    v_lo, v_hi = kernel_at(s_lo), kernel_at(s_hi)
    if v_lo * v_hi > 0.0:
        raise NoSignChange(
            f"K(z0, zeta(s)) has the same sign at s={s_lo} ({v_lo:.3e}) and s={s_hi} ({v_hi:.3e})",
            values=(v_lo, v_hi),
        )
    s_star = brentq(kernel_at, s_lo, s_hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)
    zeta_star = -z0 / s_star
    scale = math.sqrt(
        series_derivatives(domain, np.asarray(z0 * z0), 0, trunc)[0][0].real
        * series_derivatives(domain, np.asarray(zeta_star * zeta_star), 0, trunc)[0][0].real
    )
    residual = abs(kernel_at(s_star))
    logger.info(f"Kernel zero for r={r:g}: s*={s_star:.15g}, zeta*={zeta_star:.15g}, |K|={residual:.2e}")
    return RootReport(
        location=complex(zeta_star),
        residual=residual,
        evidence=SignBracket(interval=(s_lo, s_hi), values=(v_lo, v_hi)),
        scale=scale,
        parameter=s_star,
    )


def _winding(f: Callable, rect: Rectangle, per_side: int, step: float) -> Tuple[complex, complex, float, float]:
    """(argument-principle integral, first moment, min |f|, max |f|) over the rectangle boundary."""
    nodes, weights = rect.contour(per_side)
    values = f(nodes)
    slope = (f(nodes + step) - f(nodes - step)) / (2.0 * step)
    log_deriv = slope / values
    count = np.sum(log_deriv * weights) / (2j * math.pi)
    moment = np.sum(nodes * log_deriv * weights) / (2j * math.pi)
    modulus = np.abs(values)
    return complex(count), complex(moment), float(modulus.min()), float(modulus.max())


def _stable_count(f: Callable, rect: Rectangle, per_side: int) -> Tuple[int, complex, float]:
    step = 1e-6 * rect.size
    for attempt in range(3):
        count, moment, low, high = _winding(f, rect, per_side * 4 ** attempt, step)
        if low <= 1e-12 * high:
            raise ContourThroughZero(f"|f| = {low:.3e} on the boundary of {rect}")
        nearest = round(count.real)
        if abs(count - nearest) < 0.1:
            return int(nearest), moment, high
    raise ContourThroughZero(f"Winding number on {rect} did not settle: {count}")


def _newton(f: Callable, start: complex, rect: Rectangle, scale: float,
            max_iter: int = 60) -> Tuple[complex, NewtonTrace]:
    xi = start
    step_size = 1e-6 * rect.size
    last = math.inf
    for iteration in range(1, max_iter + 1):
        value = complex(f(np.asarray([xi]))[0])
        slope = complex((f(np.asarray([xi + step_size])) - f(np.asarray([xi - step_size])))[0]) / (2.0 * step_size)
        if slope == 0:
            raise NewtonDiverged(f"Zero derivative at {xi}")
        update = value / slope
        xi -= update
        last = abs(update)
        if not rect.contains(xi, slack=0.5 * rect.size):
            raise NewtonDiverged(f"Newton left {rect} at {xi}")
        if last <= 4e-16 * max(1.0, abs(xi)):
            break
    residual = abs(complex(f(np.asarray([xi]))[0]))
    if residual > 1e-10 * scale:
        raise NewtonDiverged(f"Newton stalled at {xi} with |f|={residual:.3e} (scale {scale:.3e})")
    return xi, NewtonTrace(start=start, iterations=iteration, last_step=last)


def _roots_in(f: Callable, rect: Rectangle, per_side: int, depth: int) -> List[RootReport]:
    count, moment, scale = _stable_count(f, rect, per_side)
    if count <= 0:
        return []
    if count > 1 and depth > 0:
        reports = []
        for cell in rect.split(2, 2):
            reports += _roots_in(f, cell, per_side, depth - 1)
        return reports
    start = moment / count
    if not rect.contains(start):
        start = rect.center
    xi, trace = _newton(f, start, rect, scale)
    residual = abs(complex(f(np.asarray([xi]))[0]))
    return [RootReport(
        location=xi,
        residual=residual,
        evidence=Winding(contour=rect, count=count),
        scale=scale,
        refinement=trace,
    )]


def complex_roots_region(
    f: Callable[[np.ndarray], np.ndarray],
    region: Rectangle,
    grid: Tuple[int, int] = (4, 4),
    per_side: int = 64,
    depth: int = 4,
) -> List[RootReport]:
    """
    Zeros of a holomorphic function inside a rectangle.

    The region is cut into grid cells; each cell's zero count comes from the
    argument principle on its boundary, and every occupied cell is refined by
    Newton iteration started at the contour estimate of the root. Cells with
    several zeros are subdivided. Cell boundaries that pass through a zero are
    moved and the search retried, at most three times.

    Args:
        f: vectorised holomorphic function of a complex array
        region: search rectangle
        grid: cells along the real and imaginary axes

    Returns:
        RootReports sorted by real part, then imaginary part
    """
    nx, ny = grid
    last_error = None
    for attempt in range(4):
        shift = 0.0 if attempt == 0 else 1e-3 * attempt * math.sqrt(2.0)
        width = region.re_max - region.re_min
        height = region.im_max - region.im_min
        xs = np.linspace(region.re_min, region.re_max, nx + 1)
        ys = np.linspace(region.im_min, region.im_max, ny + 1)
        xs[1:-1] += shift * width / nx
        ys[1:-1] += shift * height / ny
        try:
            total, _, _ = _stable_count(f, region, per_side)
            reports = []
            for i in range(nx):
                for j in range(ny):
                    reports += _roots_in(f, Rectangle(xs[i], xs[i + 1], ys[j], ys[j + 1]), per_side, depth)
            found = sum(rep.evidence.count if isinstance(rep.evidence, Winding) else 1 for rep in reports)
            if found != total:
                raise ContourThroughZero(f"Cell counts add to {found}, region winding is {total}")
            return sorted(reports, key=lambda rep: (rep.location.real, rep.location.imag))
        except ContourThroughZero as e:
            last_error = e
            logger.info(f"Root search attempt {attempt + 1} rejected: {e}")
    raise ContourThroughZero(f"Root search failed after grid perturbations: {last_error}")


def thm5_scale(r: float) -> float:
    """c = sqrt|2 log r^2|."""
    return math.sqrt(abs(4.0 * math.log(r)))


def thm5_points(r: float, xi) -> Tuple[float, np.ndarray]:
    """Base point zeta0 = (2L)^(-1/4) and z(xi) = i/(xi (2L)^(1/4))."""
    rho = (2.0 * abs(2.0 * math.log(r))) ** -0.25
    return rho, 1j * rho / np.asarray(xi, dtype=complex)


def thm5_defect_function(r: float, trunc: Truncation = Truncation()) -> Callable[[np.ndarray], np.ndarray]:
    """xi -> K(z, zeta0) K_11bar(z, zeta0) - K_1 K_1bar at z = z(xi), vectorised."""
    factor = DomainSpec.annulus(r)

    def defect(xi: np.ndarray) -> np.ndarray:
        rho, z = thm5_points(r, xi)
        return defect_profile(factor, z * rho, trunc)

    return defect


def defect_split(r: float, xi: complex) -> Tuple[complex, complex]:
    """
    Dominant part F of the defect at the immersion-failure points and the remainder G.

    F keeps the log and (1 - t)^-2 terms of the kernel together with their jets;
    G carries every r-power image term.
    """
    c = thm5_scale(r)
    rho, z = thm5_points(r, xi)
    t = complex(z * rho)
    a = 2.0 / c ** 2
    f = (a / t + (1 - t) ** -2) / math.pi
    df = (-a / t ** 2 + 2 * (1 - t) ** -3) / math.pi
    ddf = (2 * a / t ** 3 + 6 * (1 - t) ** -4) / math.pi
    dominant = f * (df + t * ddf) - t * df ** 2
    total = complex(defect_profile(DomainSpec.annulus(r), np.asarray([t]))[0])
    return complex(dominant), total - complex(dominant)


def thm5_reference_root(r: float, tol: float = 1e-6) -> complex:
    """
    Closed-form root of the dominant defect equation 2/(1 - i/(xi c))^3 = 2 xi^2.

    xi = i/c + (1 + i sqrt3) c^3 / cbrt(12 R) + (1 - i sqrt3) cbrt(R) / (2 c^3 cbrt 18)
    with R = -9i c^8 + sqrt3 sqrt(-27 c^16 - 4 c^18). Principal branches are tried
    first, then the other square-root and cube-root branches; the first candidate
    whose residual is below tol is returned.
    """
    c = thm5_scale(r)
    sqrt3 = math.sqrt(3.0)
    residuals = []
    for sqrt_sign in (1, -1):
        radicand = -9j * c ** 8 + sqrt_sign * sqrt3 * cmath.sqrt(-27 * c ** 16 - 4 * c ** 18)
        principal = radicand ** (1 / 3)
        for k in range(3):
            cube = principal * cmath.exp(2j * math.pi * k / 3)
            xi = (
                1j / c
                + (1 + 1j * sqrt3) * c ** 3 / (12 ** (1 / 3) * cube)
                + (1 - 1j * sqrt3) * cube / (2 * c ** 3 * 18 ** (1 / 3))
            )
            residual = abs(2 / (1 - 1j / (xi * c)) ** 3 - 2 * xi ** 2)
            residuals.append(residual)
            if residual <= tol:
                logger.debug(f"Reference root for r={r:g}: sqrt branch {sqrt_sign:+d}, cube branch {k}, "
                             f"residual {residual:.2e}")
                return complex(xi)
    raise BranchAmbiguity(f"No radical branch validates for r={r:g}", residuals=residuals)


def rank1_inclusion_check(domain: DomainSpec, z0: PointLike, z: PointLike,
                          trunc: Truncation = Truncation(), zero_tol: float = 1e-10) -> float:
    """
    Relative size of the immersion defect at a point of the kernel zero set.

    On K(z, z0) = 0 the defect matrix is -d_i K conj-d_j K, of rank one, so its
    determinant vanishes when n > 1. Returns |det| divided by
    sqrt(det(K^2 T)(z) det(K^2 T)(z0)).
    """
    if domain.kind is not DomainKind.PRODUCT or domain.n < 2:
        raise ValueError("The rank-one inclusion needs a product domain of dimension at least 2")
    zc = require_admissible(domain, z, "z")
    bc = require_admissible(domain, z0, "z0")
    jet = eval_kernel_jet(domain, zc, bc, (1, 1), trunc)
    diag_z = eval_kernel_jet(domain, zc, zc, (1, 1), trunc)
    diag_0 = eval_kernel_jet(domain, bc, bc, (1, 1), trunc)
    if abs(jet.value) > zero_tol * math.sqrt(diag_z.value.real * diag_0.value.real):
        raise NotOnZeroSet(f"|K(z, z0)| = {abs(jet.value):.3e} is not zero at z={zc}")
    normaliser = math.sqrt(
        np.linalg.det(log_hessian(diag_z)).real * np.linalg.det(log_hessian(diag_0)).real
    )
    return float(abs(np.linalg.det(log_hessian(jet))) / normaliser)


def limiting_zero_parameter(r: float) -> float:
    """s* for the kernel without r-power image terms: ((1 - 2a) + sqrt(1 - 4a))/2, a = 1/|log r^2|."""
    a = 1.0 / abs(2.0 * math.log(r))
    if a >= 0.25:
        raise ValueError(f"No real limiting zero for r={r:g}: 1/|log r^2| = {a:.3f} >= 1/4")
    return 0.5 * ((1.0 - 2.0 * a) + math.sqrt(1.0 - 4.0 * a))


def limiting_defect_root(r: float) -> complex:
    """
    xi-root of the defect without r-power image terms.

    That defect is proportional to a[(1-t)^4 + 6t(1-t)^3 + 6t^2(1-t)^2] + 2t^2 with
    a = 1/|log r^2|; the quartic root nearest i/c is mapped back by xi = i/(c t).
    """
    c = thm5_scale(r)
    a = 2.0 / c ** 2
    x = Polynomial([0.0, 1.0])
    p = 1.0 - x
    quartic = a * (p ** 4 + 6 * x * p ** 3 + 6 * x ** 2 * p ** 2) + 2 * x ** 2
    roots = quartic.roots()
    t = roots[np.argmin(np.abs(roots - 1j / c))]
    return complex(1j / (c * t))
