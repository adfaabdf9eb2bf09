# core/kernel.py

"""Bergman kernel series and mixed jets for the disk, annuli and their products."""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.special import comb, factorial

from .domains import DomainKind, DomainSpec, PointLike, Truncation, require_admissible
from .errors import NearSingularLocus, SeriesTruncationFailure

logger = logging.getLogger(__name__)

MAX_JET_ORDER = 2


@dataclass(frozen=True)
class SeriesCertificate:
    tail_bound: float
    terms_used: int
    trunc: Truncation


@dataclass(frozen=True)
class SmallnessReport:
    eq1: bool
    eq2: bool
    eq3: bool

    @property
    def all_hold(self) -> bool:
        return self.eq1 and self.eq2 and self.eq3


def _guard_singular(factor: DomainSpec, modulus: np.ndarray, trunc: Truncation) -> None:
    margin = trunc.boundary_margin
    if np.any(np.abs(modulus - 1.0) < margin):
        raise NearSingularLocus(f"|z conj(zeta)| within {margin:g} of 1 on {factor.describe()}")
    if factor.kind is DomainKind.ANNULUS:
        r2 = factor.r * factor.r
        if np.any(np.abs(modulus - r2) < margin):
            raise NearSingularLocus(
                f"|z conj(zeta)| within {margin:g} of r^2={r2:.3e} on {factor.describe()}"
            )


def _annulus_terms(factor: DomainSpec, tmin: float, tmax: float, m_max: int,
                   trunc: Truncation) -> Tuple[int, float]:
    """Number of image terms J (indices 0..J) and the certified tail bound for all m <= m_max."""
    log_r = math.log(factor.r)
    r2 = factor.r * factor.r
    fac = math.factorial(m_max + 1)
    delta_a = tmin - r2 * r2
    delta_b = 1.0 - r2 * tmax
    scale = fac / (math.pi * (1.0 - r2)) * (
        r2 / delta_a ** (m_max + 2) + 1.0 / delta_b ** (m_max + 2)
    )
    # tail(J) = scale * r^(2J+2)
    needed = (math.log(trunc.tol_abs) - math.log(scale)) / log_r
    n_terms = max(1, int(math.ceil((needed - 2.0) / 2.0)))
    if n_terms + 1 > trunc.max_terms:
        raise SeriesTruncationFailure(
            f"{factor.describe()} needs {n_terms + 1} image terms to reach "
            f"{trunc.tol_abs:g}, max_terms={trunc.max_terms}"
        )
    tail = scale * math.exp((2 * n_terms + 2) * log_r)
    return n_terms, tail


def series_derivatives(
    factor: DomainSpec,
    t,
    m_max: int,
    trunc: Truncation = Truncation(),
) -> Tuple[np.ndarray, SeriesCertificate]:
    """
    Derivatives f^(m)(t), m = 0..m_max, of the kernel profile K = f(z conj(zeta)).

    Args:
        factor: one-dimensional domain (disk or annulus)
        t: array of values z*conj(zeta), real or complex
        m_max: highest derivative order
        trunc: truncation control for the annulus image series

    Returns:
        (array of shape (m_max+1,) + t.shape, SeriesCertificate)
    """
    if factor.kind is DomainKind.PRODUCT:
        raise ValueError("series_derivatives works on one-dimensional factors")
    t = np.asarray(t)
    modulus = np.abs(t)
    _guard_singular(factor, modulus, trunc)
    orders = np.arange(m_max + 1).reshape((-1,) + (1,) * t.ndim)
    facs = factorial(orders + 1)

    if factor.kind is DomainKind.UNIT_DISK:
        values = facs * (1.0 - t)[None, ...] ** (-(orders + 2)) / math.pi
        return values, SeriesCertificate(0.0, 1, trunc)

    log_r = math.log(factor.r)
    n_terms, tail = _annulus_terms(factor, float(modulus.min()), float(modulus.max()), m_max, trunc)
    j = np.arange(n_terms + 1).reshape((-1,) + (1,) * t.ndim)
    p = np.exp(2.0 * j * log_r)
    q = np.exp((2.0 * j + 2.0) * log_r)
    lam = -1.0 / (2.0 * log_r)

    values = []
    for m in range(m_max + 1):
        fac = math.factorial(m + 1)
        inner = (-1) ** m * fac * np.sum(q * (t[None, ...] - q) ** (-(m + 2)), axis=0)
        outer = fac * np.sum(p ** (m + 1) * (1.0 - p * t[None, ...]) ** (-(m + 2)), axis=0)
        log_term = lam * (-1) ** m * math.factorial(m) * t ** (-(m + 1))
        values.append((inner + outer + log_term) / math.pi)

    logger.debug(f"{factor.describe()}: {n_terms + 1} image terms, tail bound {tail:.2e}")
    return np.stack(values), SeriesCertificate(tail, n_terms + 1, trunc)


def laurent_kernel_oracle(r: float, z: complex, zeta: complex,
                          trunc: Truncation = Truncation()) -> complex:
    """Annulus kernel as the orthonormal-basis sum over z^k, k in Z."""
    factor = DomainSpec.annulus(r)
    require_admissible(factor, z, "z")
    require_admissible(factor, zeta, "zeta")
    t = complex(z) * complex(zeta).conjugate()
    x = abs(t)
    r2 = r * r
    _guard_singular(factor, np.asarray(x), trunc)

    def _count(ratio: float, prefactor: float) -> int:
        # smallest N with prefactor * sum_{k>N} (k+1) ratio^k <= tol
        n_max = trunc.max_terms
        n = 1
        while n <= n_max:
            bound = prefactor * ratio ** (n + 1) * ((n + 2) - (n + 1) * ratio) / (1.0 - ratio) ** 2
            if bound <= trunc.tol_abs:
                return n
            n *= 2
        raise SeriesTruncationFailure(f"Laurent sum at |t|={x:.6g} needs more than {n_max} terms")

    n_pos = _count(x, 1.0 / (math.pi * (1.0 - r2)))
    k = np.arange(n_pos + 1)
    positive = np.sum(t ** k * (k + 1) / (math.pi * (1.0 - r2 ** (k + 1))))

    n_neg = _count(r2 / x, 1.0 / (math.pi * x * (1.0 - r2)))
    m = np.arange(1, n_neg + 1)
    # k = -m-1: t^k / c_k = t^(-m-1) m r^(2m) / (pi (1 - r^(2m)))
    negative = np.sum(t ** (-m - 1) * m * r2 ** m / (math.pi * (1.0 - r2 ** m)))

    central = 1.0 / (t * 2.0 * math.pi * math.log(1.0 / r))
    return complex(positive + negative + central)


@dataclass(frozen=True)
class KernelJet:
    """
    Mixed jets d_z^a d_conj(zeta)^b K at one pair of points.

    Product kernels factorise, so only the one-dimensional tables are stored and
    multi-index entries are assembled on request.
    """
    domain: DomainSpec
    z: Tuple[complex, ...]
    zeta: Tuple[complex, ...]
    order: Tuple[int, int]
    tables: Tuple[np.ndarray, ...]
    certificates: Tuple[SeriesCertificate, ...]

    def entry(self, a: Sequence[int], b: Sequence[int]) -> complex:
        if len(a) != self.domain.n or len(b) != self.domain.n:
            raise ValueError(f"Multi-indices must have length {self.domain.n}")
        value = 1.0 + 0.0j
        for table, ak, bk in zip(self.tables, a, b):
            if ak > self.order[0] or bk > self.order[1] or ak < 0 or bk < 0:
                raise ValueError(f"Jet entry ({ak},{bk}) outside computed order {self.order}")
            value *= table[ak, bk]
        return complex(value)

    def __getitem__(self, key) -> complex:
        a, b = key
        if np.isscalar(a):
            a, b = (a,), (b,)
        return self.entry(tuple(a), tuple(b))

    @property
    def value(self) -> complex:
        zero = (0,) * self.domain.n
        return self.entry(zero, zero)

    def unit(self, i: int = None, j: int = None) -> complex:
        """Entry with first-order derivatives in coordinate i (z side) and j (zeta side)."""
        a = [0] * self.domain.n
        b = [0] * self.domain.n
        if i is not None:
            a[i] = 1
        if j is not None:
            b[j] = 1
        return self.entry(a, b)

    @property
    def tail_bound(self) -> float:
        return max(c.tail_bound for c in self.certificates)


def jet_table(derivs: np.ndarray, z: complex, w: complex, order: Tuple[int, int]) -> np.ndarray:
    """
    Table of d_z^a d_w^b f(z w) for a <= order[0], b <= order[1].

    Uses d_z^a d_w^b f = sum_i C(a,i) b!/(b-a+i)! z^(b-a+i) w^i f^(b+i).
    """
    a_max, b_max = order
    table = np.zeros((a_max + 1, b_max + 1), dtype=complex)
    for a in range(a_max + 1):
        for b in range(b_max + 1):
            total = 0.0j
            for i in range(a + 1):
                p = b - a + i
                if p < 0:
                    continue
                coeff = comb(a, i, exact=True) * math.factorial(b) // math.factorial(p)
                total += coeff * z ** p * w ** i * derivs[b + i]
            table[a, b] = total
    return table


def eval_kernel_jet(
    domain: DomainSpec,
    z: PointLike,
    zeta: PointLike,
    order: Tuple[int, int] = (MAX_JET_ORDER, MAX_JET_ORDER),
    trunc: Truncation = Truncation(),
) -> KernelJet:
    a_max, b_max = order
    if not (0 <= a_max <= MAX_JET_ORDER and 0 <= b_max <= MAX_JET_ORDER):
        raise ValueError(f"Jet order per coordinate must be within 0..{MAX_JET_ORDER}, got {order}")
    zc = require_admissible(domain, z, "z")
    wc = require_admissible(domain, zeta, "zeta")

    tables = []
    certificates = []
    for factor, zk, zetak in zip(domain.factor_list, zc, wc):
        w = zetak.conjugate()
        t = abs(zk) ** 2 if zk == zetak else zk * w
        derivs, cert = series_derivatives(factor, np.asarray(t), a_max + b_max, trunc)
        tables.append(jet_table(derivs, zk, w, order))
        certificates.append(cert)

    return KernelJet(
        domain=domain,
        z=tuple(zc),
        zeta=tuple(wc),
        order=(a_max, b_max),
        tables=tuple(tables),
        certificates=tuple(certificates),
    )


def check_smallness(r: float, epsilon: float) -> SmallnessReport:
    """
    The three smallness inequalities tying r to the bracket half-width epsilon:
    |1/log r^2| < eps^2, |r log r^2| < eps and r^2/(1 - r^2) < eps^2.
    """
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must lie in (0, 1), got {r}")
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    log_r2 = 2.0 * math.log(r)
    eq1 = 1.0 / abs(log_r2) < epsilon ** 2
    eq2 = abs(r * log_r2) < epsilon
    eq3 = r * r / (1.0 - r * r) < epsilon ** 2
    return SmallnessReport(eq1=eq1, eq2=eq2, eq3=eq3)


def sign_bracket_bounds(epsilon: float) -> Tuple[float, float]:
    """
    Closed-form bounds on K(z0, zeta(s)) at the bracket ends s = 1 + eps and s = 1 - eps.

    Returns:
        (upper bound at s = 1 + eps, lower bound at s = 1 - eps); the first is
        negative and the second positive for small eps.
    """
    e = epsilon
    upper = (-e + ((1 + e) ** 2 * (e ** 2 + 1) + 1) * e ** 2) / math.pi
    lower = ((1 - e) ** 2 / (1 - e + e ** 2) ** 2 - (1 - e)) / math.pi
    return upper, lower

