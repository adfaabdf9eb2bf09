# core/geodesics.py

"""Two-sided distance estimates and the explicit comparison paths."""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .domains import DomainKind, DomainSpec, PointLike, Truncation, require_admissible
from .errors import BergmanError, OptimizerNotConverged
from .geometry import check_metric_kind, metric_weights, skwarczynski_bound, tilde_bound
from .kernel import check_smallness
from .paths import CircularArc, LinearSegment, ParamPath, Polyline, path_length

logger = logging.getLogger(__name__)

DISK_MIN_RADIUS = 1e-12


def _jittered(nodes: np.ndarray, seed: int, scale: float) -> np.ndarray:
    """Interior nodes moved by a seeded log-polar perturbation; endpoints fixed."""
    rng = np.random.default_rng(seed)
    out = np.array(nodes, dtype=complex)
    shape = out[1:-1].shape
    out[1:-1] *= np.exp(scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)))
    return out


@dataclass(frozen=True)
class DistanceOptions:
    nodes: int = 64
    quad_order: int = 8
    quad_tol: float = 1e-10
    ftol: float = 1e-10
    max_iter: int = 5000
    extra_seeds: Tuple[ParamPath, ...] = ()
    restart_seed: Optional[int] = None
    restart_scale: float = 0.02
    strict: bool = False
    trunc: Truncation = field(default_factory=Truncation)

    def __post_init__(self):
        if self.nodes < 3:
            raise ValueError(f"Distance polylines need at least 3 nodes, got {self.nodes}")


@dataclass(frozen=True)
class DistanceResult:
    lower: float
    upper: float
    path: ParamPath
    iterations: int
    converged: bool
    seed_upper: float
    optimized_upper: float
    kind: str = "bergman"


def _canonical_swap(z: np.ndarray, w: np.ndarray) -> bool:
    key_z = tuple(itertools.chain.from_iterable((c.real, c.imag) for c in z))
    key_w = tuple(itertools.chain.from_iterable((c.real, c.imag) for c in w))
    return key_w < key_z


def _wrap(angle: float) -> float:
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


def _chord_clearance(a: complex, b: complex) -> float:
    """Smallest modulus along the chord from a to b."""
    d = b - a
    if d == 0:
        return abs(a)
    u = -(a.conjugate() * d).real / abs(d) ** 2
    return abs(a + min(1.0, max(0.0, u)) * d)


def _coordinate_seeds(factor: DomainSpec, a: complex, b: complex, pad: float) -> List[ParamPath]:
    seeds = []
    straight_ok = True
    if factor.kind is DomainKind.ANNULUS:
        straight_ok = _chord_clearance(a, b) ** 2 > factor.r ** 2 + pad
    if straight_ok:
        seeds.append(ParamPath.of(LinearSegment(a, b)))
    if factor.kind is DomainKind.ANNULUS and a != 0 and b != 0:
        sweep = _wrap(math.atan2(b.imag, b.real) - math.atan2(a.imag, a.real))
        if abs(sweep) > math.pi / 2.0 or not seeds:
            start_angle = math.atan2(a.imag, a.real)
            arc = CircularArc(abs(b), start_angle, start_angle + sweep)
            pieces = []
            if abs(a) != abs(b):
                pieces.append(LinearSegment(a, arc.start[0]))
            pieces.append(arc)
            seeds.append(ParamPath(tuple(pieces)))
    return seeds


def _seed_paths(domain: DomainSpec, z: np.ndarray, w: np.ndarray, options: DistanceOptions) -> List[ParamPath]:
    pad = 100.0 * options.trunc.boundary_margin
    per_coordinate = [
        _coordinate_seeds(f, complex(a), complex(b), pad)
        for f, a, b in zip(domain.factor_list, z, w)
    ]
    if domain.n == 1:
        return per_coordinate[0]
    seeds = []
    for combo in itertools.product(*per_coordinate):
        columns = [seed.sample(options.nodes)[:, 0] for seed in combo]
        seeds.append(ParamPath.of(Polyline(np.stack(columns, axis=1))))
    return seeds


def _log_radius_bounds(domain: DomainSpec, trunc: Truncation) -> List[Tuple[float, float]]:
    pad = 100.0 * trunc.boundary_margin
    bounds = []
    for factor in domain.factor_list:
        upper = 0.5 * math.log1p(-pad)
        if factor.kind is DomainKind.ANNULUS:
            lower = 0.5 * math.log(factor.r ** 2 + pad)
        else:
            lower = math.log(DISK_MIN_RADIUS)
        bounds.append((lower, upper))
    return bounds


def _energy(domain: DomainSpec, nodes: np.ndarray, kind: str, trunc: Truncation) -> Tuple[float, np.ndarray]:
    """Trapezoidal path energy (M-1) sum |dz|^2 W and its complex gradient per node."""
    count = nodes.shape[0]
    weights, slopes = metric_weights(domain, nodes, kind, trunc, gradient=True)
    delta = np.diff(nodes, axis=0)
    d2 = np.abs(delta) ** 2
    mid = 0.5 * (weights[:-1] + weights[1:])
    energy = (count - 1) * float(np.sum(mid * d2))

    around = np.zeros(weights.shape)
    around[:-1] += d2
    around[1:] += d2
    grad = slopes * nodes * around
    grad[1:] += 2.0 * mid * delta
    grad[:-1] -= 2.0 * mid * delta
    return energy, (count - 1) * grad


def _optimize(domain: DomainSpec, seed_nodes: np.ndarray, kind: str,
              options: DistanceOptions) -> Tuple[np.ndarray, int, bool]:
    nodes = np.array(seed_nodes, dtype=complex)
    interior = nodes[1:-1]
    shape = interior.shape
    radius_bounds = _log_radius_bounds(domain, options.trunc)
    lo = np.array([b[0] for b in radius_bounds])
    hi = np.array([b[1] for b in radius_bounds])

    modulus = np.maximum(np.abs(interior), DISK_MIN_RADIUS)
    log_radius = np.clip(np.log(modulus), lo, hi)
    full_angle = np.unwrap(np.angle(np.where(nodes == 0, DISK_MIN_RADIUS, nodes)), axis=0)
    x0 = np.concatenate([log_radius.ravel(), full_angle[1:-1].ravel()])
    size = log_radius.size
    bounds = [(lo[k % shape[1]], hi[k % shape[1]]) for k in range(size)] + [(None, None)] * size

    def unpack(x: np.ndarray) -> np.ndarray:
        current = nodes.copy()
        current[1:-1] = np.exp(x[:size].reshape(shape) + 1j * x[size:].reshape(shape))
        return current

    def objective(x: np.ndarray) -> Tuple[float, np.ndarray]:
        current = unpack(x)
        energy, grad = _energy(domain, current, kind, options.trunc)
        rotated = np.conj(grad[1:-1]) * current[1:-1]
        return energy, np.concatenate([rotated.real.ravel(), -rotated.imag.ravel()])

    result = minimize(
        objective,
        x0,
        jac=True,
        method="L-BFGS-B",
        bounds=bounds,
        options={"maxiter": options.max_iter, "ftol": options.ftol, "gtol": 1e-10, "maxcor": 20},
    )
    _, gradient = objective(result.x)
    stationary = float(np.max(np.abs(gradient))) <= 1e-6 * max(1.0, abs(result.fun))
    converged = bool(result.success) or stationary
    logger.debug(f"L-BFGS-B: {result.nit} iterations, energy {result.fun:.12g}, {result.message}")
    return unpack(result.x), int(result.nit), converged


def _orient(path: ParamPath, start: np.ndarray, end: np.ndarray) -> ParamPath:
    if np.allclose(path.start, start, atol=1e-12) and np.allclose(path.end, end, atol=1e-12):
        return path
    if np.allclose(path.start, end, atol=1e-12) and np.allclose(path.end, start, atol=1e-12):
        return path.reversed()
    raise ValueError("Extra seed path does not join the query endpoints")


def distance(
    domain: DomainSpec,
    z: PointLike,
    w: PointLike,
    kind: str = "bergman",
    options: DistanceOptions = DistanceOptions(),
) -> DistanceResult:
    """
    Certified lower bound and optimised upper bound on the geodesic distance.

    The lower bound is the arccos bound for the chosen metric. The upper bound is
    the shortest of the seed paths and the L-BFGS-B optimised polylines started
    from them, all measured with path_length. With options.restart_seed set, one
    more start is a seeded perturbation of the first seed polyline.

    Args:
        domain: model domain
        z, w: endpoints
        kind: 'bergman' or 'tilde'
        options: discretisation and optimiser settings

    Returns:
        DistanceResult
    """
    check_metric_kind(kind)
    zc = require_admissible(domain, z, "z")
    wc = require_admissible(domain, w, "w")
    swap = _canonical_swap(zc, wc)
    if swap:
        zc, wc = wc, zc

    if np.array_equal(zc, wc):
        path = ParamPath.of(LinearSegment(zc, wc))
        return DistanceResult(0.0, 0.0, path, 0, True, 0.0, 0.0, kind)

    bound = skwarczynski_bound if kind == "bergman" else tilde_bound
    lower = bound(domain, zc, wc, options.trunc)

    seeds = _seed_paths(domain, zc, wc, options)
    seeds += [_orient(extra, zc, wc) for extra in options.extra_seeds]

    def measure(path: ParamPath) -> Optional[float]:
        try:
            return path_length(domain, path, kind, options.quad_order, options.quad_tol, options.trunc)
        except BergmanError as e:
            logger.warning(f"Skipping candidate path: {e}")
            return None

    candidates = []
    seed_upper = math.inf
    for seed in seeds:
        length = measure(seed)
        if length is not None:
            candidates.append((length, seed))
            seed_upper = min(seed_upper, length)

    starts = [seed.sample(options.nodes) for seed in seeds]
    if options.restart_seed is not None and starts:
        starts.append(_jittered(starts[0], options.restart_seed, options.restart_scale))

    optimized_upper = math.inf
    iterations = 0
    converged = False
    for start in starts:
        nodes, nit, ok = _optimize(domain, start, kind, options)
        iterations += nit
        polyline = ParamPath.of(Polyline(nodes))
        length = measure(polyline)
        if length is None:
            continue
        if length < optimized_upper:
            optimized_upper = length
            converged = ok
        candidates.append((length, polyline))

    if not candidates:
        raise BergmanError(f"No admissible path between {zc} and {wc} on {domain.describe()}")
    upper, path = min(candidates, key=lambda item: item[0])

    if not converged:
        message = f"Optimizer did not converge between {zc} and {wc} after {iterations} iterations"
        if options.strict:
            raise OptimizerNotConverged(message)
        logger.warning(message)

    if swap:
        path = path.reversed()
    logger.info(f"{kind} distance on {domain.describe()}: [{lower:.10g}, {upper:.10g}] "
                f"from {len(seeds)} seed(s)")
    return DistanceResult(
        lower=lower,
        upper=upper,
        path=path,
        iterations=iterations,
        converged=converged,
        seed_upper=seed_upper,
        optimized_upper=optimized_upper,
        kind=kind,
    )


def _warn_smallness(r: float, s: complex) -> None:
    epsilon = min(abs(s - 1.0), 0.999)
    if epsilon == 0.0:
        return
    report = check_smallness(r, epsilon)
    if not report.all_hold:
        logger.warning(f"Smallness conditions fail for r={r:g}, eps={epsilon:.3g}: {report}")


def comparison_path_thm4(r: float, s: float) -> ParamPath:
    """
    Segment from -1/(s sqrt L) to -1/sqrt L followed by the upper half circle to 1/sqrt L.

    L = |log r^2|. The path joins the kernel zero near -1/sqrt L to z0 = 1/sqrt L.
    """
    domain = DomainSpec.annulus(r)
    big_l = abs(domain.log_r2)
    rho = 1.0 / math.sqrt(big_l)
    start = -rho / s
    require_admissible(domain, start, "gamma1 start")
    require_admissible(domain, -rho, "gamma1 end")
    _warn_smallness(r, s)
    return ParamPath.of(LinearSegment(start, -rho), CircularArc(rho, math.pi, 0.0))


def comparison_path_thm5(r: float, xi: complex) -> ParamPath:
    """Segment from i/(xi (2L)^(1/4)) to i/(2L)^(1/4), then the quarter circle to (2L)^(-1/4)."""
    domain = DomainSpec.annulus(r)
    rho = (2.0 * abs(domain.log_r2)) ** -0.25
    start = 1j * rho / complex(xi)
    require_admissible(domain, start, "gamma1 start")
    _warn_smallness(r, complex(xi))
    return ParamPath.of(LinearSegment(start, 1j * rho), CircularArc(rho, math.pi / 2.0, 0.0))


def gamma1_length_limit(s: float) -> float:
    """Limit as r -> 0 of the Bergman length of the first comparison segment: |arctan 1 - arctan s|."""
    return abs(math.atan(1.0) - math.atan(s))


def segment_lengths(domain: DomainSpec, path: ParamPath, kind: str = "bergman",
                    quad_order: int = 8, tol: float = 1e-10,
                    trunc: Truncation = Truncation()) -> Sequence[float]:
    return [path_length(domain, seg, kind, quad_order, tol, trunc) for seg in path.segments]
